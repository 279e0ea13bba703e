#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "octofc/octonion.hpp"

namespace octofc {

// left: f(q) = sum_k q^k a_k, right: f(q) = sum_k a_k q^k
struct SlicePolynomial {
  Side side = Side::Left;
  std::vector<Octonion> coeffs;

  bool slice_preserving() const;
  Octonion operator()(const Octonion& q) const;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  static SlicePolynomial monomial(int m, Side side = Side::Left);
  static SlicePolynomial constant(const Octonion& a, Side side = Side::Left);
  // truncated exponential sum_{k<=N} q^k / k!
  static SlicePolynomial exp_truncated(int N, Side side = Side::Left);
  static SlicePolynomial real(const std::vector<double>& c, Side side = Side::Left);
};

// same coefficients, opposite side
SlicePolynomial flip_side(const SlicePolynomial& f);

// F1 + i F2 on C; left evaluation F1(z) + J F2(z), right F1(z) + F2(z) J
struct StemFunction {
  Side side = Side::Left;
  std::function<Octonion(std::complex<double>)> F1, F2;
};

StemFunction stem_of(const SlicePolynomial& f);
Octonion eval_slice(const SlicePolynomial& f, const Octonion& q);
Octonion eval_slice(const StemFunction& F, const Octonion& q);
// max of |F1(conj z) - F1(z)| and |F2(conj z) + F2(z)| over the sample points
double stem_condition_defect(const StemFunction& F, const std::vector<std::complex<double>>& zs);

// Type-erased slice function used by the calculus.
struct SliceFunction {
  Side side = Side::Left;
  bool preserving = false;  // real valued stem: f maps each C_J into itself
  std::function<Octonion(const Octonion&)> eval;
  std::string name;

  Octonion operator()(const Octonion& q) const { return eval(q); }
  static SliceFunction from(const SlicePolynomial& p);
  static SliceFunction from(const StemFunction& F, bool preserving);
};

SlicePolynomial slice_product(const SlicePolynomial& f, const SlicePolynomial& g);

Octonion q_char(const Octonion& s, const Octonion& q);  // q^2 - 2 Re(s) q + |s|^2
Octonion cauchy_kernel(const Octonion& s, const Octonion& q, Side side);

// circle center + radius e^{J theta} in C_J, equispaced nodes
struct SliceContour {
  Octonion J = Octonion::unit(1);
  double center = 0.0;
  double radius = 1.0;
  int nodes = 256;

  Octonion node(int k) const;
  // trapezoid weight for (1/2pi) ds_J at node k, i.e. (s_k - center) / M
  Octonion weight(int k) const;
  void validate() const;
  // encloses every sphere point x + yI with |(x - c) + iy| < r
  bool encloses(const Octonion& q, double margin = 0.0) const;
};

// f_(i)(s) for s in C_J with f = sum f_(i) . J_i (left) or sum J_i . f_(i) (right); each value in C_J
std::array<Octonion, 8> slice_components(const SliceFunction& f, const SliceFrame& frame,
                                         const Octonion& s);

struct CauchyResult {
  Octonion value;
  double error_estimate = 0.0;  // difference to the half-node rule
};
CauchyResult slice_cauchy_eval(const SliceFunction& f, const Octonion& q, const SliceContour& c);
// same integral through slice products with the kernel, via the representation formula
Octonion slice_cauchy_eval_product_form(const SliceFunction& f, const Octonion& q, const SliceContour& c);

// |(d/dx + L_J d/dy) f| (left) or |(d/dx + R_J d/dy) f| (right) at q = x + yJ, y != 0
double regularity_residual(const SliceFunction& f, const Octonion& q, double h);

using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;
// f on C_J written as sum_{i<4} F_i(z) J_i with C_J-valued F_i, z = x + iy <-> x + yJ
std::array<ComplexFn, 4> split_components(const SliceFunction& f, const Octonion& J);
double cauchy_riemann_defect(const ComplexFn& F, std::complex<double> z, double h);

}  // namespace octofc
