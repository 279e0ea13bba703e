#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "octofc/omodule.hpp"

namespace octofc {

// n x n octonionic matrix acting on O^n by left multiplication of entries:
// (A x)_i = sum_j a_ij x_j. Row-major storage.
class OctMatrix {
public:
  OctMatrix() = default;
  explicit OctMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static OctMatrix identity(std::size_t n);
  static OctMatrix left_mult(const Octonion& q, std::size_t n = 1);  // q times identity
  static OctMatrix diagonal(const std::vector<Octonion>& d);
  static OctMatrix from_real(const Eigen::MatrixXd& m);

  std::size_t n() const { return n_; }
  Octonion& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Octonion& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<Octonion>& entries() const { return a_; }

  OctVector apply(const OctVector& x) const;
  double frobenius() const;

  OctMatrix& operator+=(const OctMatrix& o);
  OctMatrix& operator-=(const OctMatrix& o);

private:
  std::size_t n_ = 0;
  std::vector<Octonion> a_;
};

OctMatrix operator+(OctMatrix a, const OctMatrix& b);
OctMatrix operator-(OctMatrix a, const OctMatrix& b);
OctMatrix operator*(double s, OctMatrix a);
double frobenius_distance(const OctMatrix& a, const OctMatrix& b);

// Real-linear operator on V = R^{8n}; coordinate 8j+c is component c of entry j.
struct RealOpMatrix {
  Eigen::MatrixXd m;
  std::size_t n() const { return static_cast<std::size_t>(m.rows()) / 8; }
  OctVector apply(const OctVector& x) const;
};

Eigen::VectorXd to_coords(const OctVector& x);
OctVector from_coords(const Eigen::VectorXd& v);
Eigen::Matrix<double, 8, 8> left_matrix(const Octonion& a);   // y -> a y
Eigen::Matrix<double, 8, 8> right_matrix(const Octonion& a);  // y -> y a

RealOpMatrix realize(const OctMatrix& T);
RealOpMatrix r_mult(const Octonion& s, std::size_t n);  // x -> x s entrywise
RealOpMatrix operator-(const RealOpMatrix& a, const RealOpMatrix& b);
RealOpMatrix operator+(const RealOpMatrix& a, const RealOpMatrix& b);
RealOpMatrix operator*(const RealOpMatrix& a, const RealOpMatrix& b);

// B_p(M, x) = M(x) p - M(x p)
OctVector second_assoc(const RealOpMatrix& M, const Octonion& p, const OctVector& x);
// max |Re B_p(M, x)| over imaginary units p and coordinate basis x
double para_linear_defect(const RealOpMatrix& M);
bool is_para_linear(const RealOpMatrix& M, double tol = 1e-10);

OctMatrix scalar_mul(const OctMatrix& A, const Octonion& p, Side side);  // p.A or A.p
OctMatrix reg_compose(const OctMatrix& A, const OctMatrix& B);           // matrix product
OctMatrix re_op(const OctMatrix& A);                                     // entrywise real part

// the matrix whose column j is M(delta_j)
OctMatrix ext_map(const RealOpMatrix& M);
// lift of Re o M: b_ij = sum_k Re(M(delta_j conj(e_k)))_i e_k
OctMatrix lif_map(const RealOpMatrix& M);

double operator_norm(const RealOpMatrix& M);
double operator_norm(const OctMatrix& T);
double min_singular_value(const RealOpMatrix& M);

// T^{(k)} built from realize(T)^k; negative k uses the inverse of realize(T)
OctMatrix reg_power(const OctMatrix& T, int k, Side side);
// right: ext of the inverse restricted to Re V; left: lift of Re o inverse
OctMatrix reg_inverse(const RealOpMatrix& M, Side side, double rel_tol = 1e-10);
OctMatrix reg_inverse(const OctMatrix& T, Side side, double rel_tol = 1e-10);
OctMatrix matrix_power(const OctMatrix& T, int k);  // A (A (... A))

struct PowerAssocReport {
  bool ok = true;
  int worst_power = 0;
  double residual = 0.0;  // max over n of ||realize(T)^n - realize(T^(n))||
  double relative = 0.0;  // same divided by max(1, ||T||^n)
};
PowerAssocReport power_assoc_check(const OctMatrix& T, int horizon = 16, double tol = 1e-9);

// T = sum_i e_i T_i with real T_i
std::array<Eigen::MatrixXd, 8> component_decompose(const OctMatrix& T);
double component_commutator_defect(const OctMatrix& T);

OctMatrix random_oct_matrix(std::size_t n, std::mt19937_64& rng, double scale = 1.0);

}  // namespace octofc
