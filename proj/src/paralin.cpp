#include "octofc/paralin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "octofc/errors.hpp"

namespace octofc {

OctMatrix OctMatrix::identity(std::size_t n) { return left_mult(Octonion(1.0), n); }

OctMatrix OctMatrix::left_mult(const Octonion& q, std::size_t n) {
  OctMatrix A(n);
  for (std::size_t i = 0; i < n; ++i) A(i, i) = q;
  return A;
}

OctMatrix OctMatrix::diagonal(const std::vector<Octonion>& d) {
  OctMatrix A(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) A(i, i) = d[i];
  return A;
}

OctMatrix OctMatrix::from_real(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DomainError("matrix must be square");
  OctMatrix A(static_cast<std::size_t>(m.rows()));
  for (std::size_t i = 0; i < A.n(); ++i)
    for (std::size_t j = 0; j < A.n(); ++j) A(i, j) = Octonion(m(i, j));
  return A;
}

OctVector OctMatrix::apply(const OctVector& x) const {
  if (x.size() != n_) throw DomainError("operator/vector size mismatch");
  OctVector y(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

double OctMatrix::frobenius() const {
  double s = 0.0;
  for (const auto& a : a_) s += a.norm2();
  return std::sqrt(s);
}

OctMatrix& OctMatrix::operator+=(const OctMatrix& o) {
  if (o.n_ != n_) throw DomainError("operator size mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

OctMatrix& OctMatrix::operator-=(const OctMatrix& o) {
  if (o.n_ != n_) throw DomainError("operator size mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

OctMatrix operator+(OctMatrix a, const OctMatrix& b) { return a += b; }
OctMatrix operator-(OctMatrix a, const OctMatrix& b) { return a -= b; }

OctMatrix operator*(double s, OctMatrix a) {
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) a(i, j) *= s;
  return a;
}

double frobenius_distance(const OctMatrix& a, const OctMatrix& b) { return (a - b).frobenius(); }

Eigen::VectorXd to_coords(const OctVector& x) {
  Eigen::VectorXd v(8 * x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    for (int c = 0; c < 8; ++c) v(8 * j + c) = x[j][c];
  return v;
}

OctVector from_coords(const Eigen::VectorXd& v) {
  OctVector x(static_cast<std::size_t>(v.size()) / 8);
  for (std::size_t j = 0; j < x.size(); ++j)
    for (int c = 0; c < 8; ++c) x[j][c] = v(8 * j + c);
  return x;
}

OctVector RealOpMatrix::apply(const OctVector& x) const {
  if (8 * x.size() != static_cast<std::size_t>(m.cols())) throw DomainError("operator/vector size mismatch");
  return from_coords(m * to_coords(x));
}

Eigen::Matrix<double, 8, 8> left_matrix(const Octonion& a) {
  Eigen::Matrix<double, 8, 8> L;
  for (int c = 0; c < 8; ++c) {
    Octonion col = a * Octonion::unit(c);
    for (int r = 0; r < 8; ++r) L(r, c) = col[r];
  }
  return L;
}

Eigen::Matrix<double, 8, 8> right_matrix(const Octonion& a) {
  Eigen::Matrix<double, 8, 8> R;
  for (int c = 0; c < 8; ++c) {
    Octonion col = Octonion::unit(c) * a;
    for (int r = 0; r < 8; ++r) R(r, c) = col[r];
  }
  return R;
}

RealOpMatrix realize(const OctMatrix& T) {
  const auto n = static_cast<Eigen::Index>(T.n());
  RealOpMatrix M{Eigen::MatrixXd::Zero(8 * n, 8 * n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M.m.block<8, 8>(8 * i, 8 * j) = left_matrix(T(i, j));
  return M;
}

RealOpMatrix r_mult(const Octonion& s, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  RealOpMatrix M{Eigen::MatrixXd::Zero(8 * nn, 8 * nn)};
  auto R = right_matrix(s);
  for (Eigen::Index i = 0; i < nn; ++i) M.m.block<8, 8>(8 * i, 8 * i) = R;
  return M;
}

RealOpMatrix operator-(const RealOpMatrix& a, const RealOpMatrix& b) { return {a.m - b.m}; }
RealOpMatrix operator+(const RealOpMatrix& a, const RealOpMatrix& b) { return {a.m + b.m}; }
RealOpMatrix operator*(const RealOpMatrix& a, const RealOpMatrix& b) { return {a.m * b.m}; }

OctVector second_assoc(const RealOpMatrix& M, const Octonion& p, const OctVector& x) {
  return mul_right(M.apply(x), p) - M.apply(mul_right(x, p));
}

double para_linear_defect(const RealOpMatrix& M) {
  std::size_t n = M.n();
  double worst = 0.0;
  for (int p = 1; p < 8; ++p) {
    for (std::size_t k = 0; k < 8 * n; ++k) {
      OctVector b = second_assoc(M, Octonion::unit(p), OctVector::coord_basis(n, k));
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(b[i].re()));
    }
  }
  return worst;
}

bool is_para_linear(const RealOpMatrix& M, double tol) {
  double scale = std::max(1.0, M.m.cwiseAbs().maxCoeff());
  return para_linear_defect(M) <= tol * scale;
}

OctMatrix scalar_mul(const OctMatrix& A, const Octonion& p, Side side) {
  OctMatrix B(A.n());
  for (std::size_t i = 0; i < A.n(); ++i)
    for (std::size_t j = 0; j < A.n(); ++j) B(i, j) = side == Side::Left ? p * A(i, j) : A(i, j) * p;
  return B;
}

OctMatrix reg_compose(const OctMatrix& A, const OctMatrix& B) {
  if (A.n() != B.n()) throw DomainError("operator size mismatch");
  OctMatrix C(A.n());
  for (std::size_t i = 0; i < A.n(); ++i)
    for (std::size_t k = 0; k < A.n(); ++k)
      for (std::size_t j = 0; j < A.n(); ++j) C(i, k) += A(i, j) * B(j, k);
  return C;
}

OctMatrix re_op(const OctMatrix& A) {
  OctMatrix B(A.n());
  for (std::size_t i = 0; i < A.n(); ++i)
    for (std::size_t j = 0; j < A.n(); ++j) B(i, j) = Octonion(A(i, j).re());
  return B;
}

OctMatrix ext_map(const RealOpMatrix& M) {
  std::size_t n = M.n();
  OctMatrix A(n);
  for (std::size_t j = 0; j < n; ++j) {
    // column 8j of M is the image of delta_j
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < 8; ++c) A(i, j)[c] = M.m(8 * i + c, 8 * j);
  }
  return A;
}

OctMatrix lif_map(const RealOpMatrix& M) {
  std::size_t n = M.n();
  OctMatrix B(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (int k = 0; k < 8; ++k) {
      // delta_j conj(e_k) = +-e_k in slot j
      double sgn = k == 0 ? 1.0 : -1.0;
      auto col = static_cast<Eigen::Index>(8 * j + k);
      for (std::size_t i = 0; i < n; ++i) B(i, j)[k] += sgn * M.m(static_cast<Eigen::Index>(8 * i), col);
    }
  }
  return B;
}

double operator_norm(const RealOpMatrix& M) {
  if (M.m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M.m);
  return svd.singularValues()(0);
}

double operator_norm(const OctMatrix& T) { return operator_norm(realize(T)); }

double min_singular_value(const RealOpMatrix& M) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M.m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

namespace {

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1), smax = sv(0);
  if (!(smin > rel_tol * std::max(1.0, smax))) {
    std::ostringstream os;
    os << "operator is singular to working precision (min singular value " << smin << ")";
    throw SingularityError(os.str(), smin);
  }
  return m.partialPivLu().inverse();
}

Eigen::MatrixXd real_power(const Eigen::MatrixXd& P, int k, double rel_tol) {
  Eigen::MatrixXd base = k < 0 ? checked_inverse(P, rel_tol) : P;
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(P.rows(), P.cols());
  for (int e = std::abs(k); e > 0; --e) r = base * r;
  return r;
}

}  // namespace

OctMatrix reg_power(const OctMatrix& T, int k, Side side) {
  RealOpMatrix P{real_power(realize(T).m, k, 1e-10)};
  return side == Side::Right ? ext_map(P) : lif_map(P);
}

OctMatrix reg_inverse(const RealOpMatrix& M, Side side, double rel_tol) {
  RealOpMatrix inv{checked_inverse(M.m, rel_tol)};
  return side == Side::Right ? ext_map(inv) : lif_map(inv);
}

OctMatrix reg_inverse(const OctMatrix& T, Side side, double rel_tol) {
  return reg_inverse(realize(T), side, rel_tol);
}

OctMatrix matrix_power(const OctMatrix& T, int k) {
  if (k < 0) throw DomainError("matrix_power needs k >= 0");
  OctMatrix r = OctMatrix::identity(T.n());
  for (int i = 0; i < k; ++i) r = reg_compose(T, r);
  return r;
}

PowerAssocReport power_assoc_check(const OctMatrix& T, int horizon, double tol) {
  PowerAssocReport rep;
  Eigen::MatrixXd P = realize(T).m;
  double nt = operator_norm(RealOpMatrix{P});
  Eigen::MatrixXd Pn = Eigen::MatrixXd::Identity(P.rows(), P.cols());
  for (int k = 1; k <= horizon; ++k) {
    Pn = P * Pn;
    RealOpMatrix Q{Pn};
    double res = operator_norm(RealOpMatrix{Pn - realize(ext_map(Q)).m});
    double rel = res / std::max(1.0, std::pow(nt, k));
    if (rel > rep.relative) {
      rep.relative = rel;
      rep.worst_power = k;
    }
    rep.residual = std::max(rep.residual, res);
  }
  rep.ok = rep.relative <= tol;
  return rep;
}

std::array<Eigen::MatrixXd, 8> component_decompose(const OctMatrix& T) {
  std::array<Eigen::MatrixXd, 8> parts;
  const auto n = static_cast<Eigen::Index>(T.n());
  for (int c = 0; c < 8; ++c) {
    parts[c] = Eigen::MatrixXd(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) parts[c](i, j) = T(i, j)[c];
  }
  return parts;
}

double component_commutator_defect(const OctMatrix& T) {
  auto p = component_decompose(T);
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      worst = std::max(worst, (p[i] * p[j] - p[j] * p[i]).cwiseAbs().maxCoeff());
  return worst;
}

OctMatrix random_oct_matrix(std::size_t n, std::mt19937_64& rng, double scale) {
  OctMatrix A(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = random_octonion(rng, scale);
  return A;
}

}  // namespace octofc
