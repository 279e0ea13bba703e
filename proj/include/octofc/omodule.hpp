#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "octofc/octonion.hpp"

namespace octofc {

// Element of O^n. Norm is the Euclidean norm of all 8n coordinates.
class OctVector {
public:
  OctVector() = default;
  explicit OctVector(std::size_t n) : v_(n) {}
  explicit OctVector(std::vector<Octonion> v) : v_(std::move(v)) {}

  std::size_t size() const { return v_.size(); }
  Octonion& operator[](std::size_t i) { return v_[i]; }
  const Octonion& operator[](std::size_t i) const { return v_[i]; }
  const std::vector<Octonion>& entries() const { return v_; }

  double norm() const;
  double norm2() const;

  // delta_j: real basis vector with 1 in slot j
  static OctVector delta(std::size_t n, std::size_t j);
  // coordinate basis vector number k in 0..8n-1: e_{k%8} in slot k/8
  static OctVector coord_basis(std::size_t n, std::size_t k);

  OctVector& operator+=(const OctVector& o);
  OctVector& operator-=(const OctVector& o);

private:
  std::vector<Octonion> v_;
};

OctVector operator+(OctVector a, const OctVector& b);
OctVector operator-(OctVector a, const OctVector& b);
OctVector operator*(double s, OctVector a);
OctVector mul_left(const Octonion& p, const OctVector& x);   // entries p x_i
OctVector mul_right(const OctVector& x, const Octonion& p);  // entries x_i p
double distance(const OctVector& a, const OctVector& b);

// Element of Re V = R^n.
struct RealVector {
  std::vector<double> v;
  std::size_t size() const { return v.size(); }
  OctVector embed() const;
};

// phi(x) = sum_j x_j r_j with real r; para-linear functional V -> O
struct RealFunctional {
  std::vector<double> r;
  Octonion operator()(const OctVector& x) const;
};

// direct real part: first coordinate of each entry
RealVector re_part(const OctVector& x);
OctVector re_embed(const OctVector& x);  // Re x as an element of V
// Re x through 5/12 x - 1/12 sum_i u_i x u_i over the imaginary units of a frame
OctVector re_part_formula(const OctVector& x);
OctVector re_part_formula(const OctVector& x, const SliceFrame& frame);
// Re x + J Re(conj(J) x), entrywise
OctVector pi_project(const OctVector& x, const Octonion& J);
Octonion pi_project(const Octonion& x, const Octonion& J);  // J not checked
bool in_slice(const OctVector& x, const Octonion& J, double tol);

// x = sum_i e_i v_i with v_i in Re V
struct ReDecomposition {
  std::array<RealVector, 8> parts;
  OctVector reassemble() const;
};
ReDecomposition re_decompose(const OctVector& x);

OctVector random_oct_vector(std::size_t n, std::mt19937_64& rng);

}  // namespace octofc
