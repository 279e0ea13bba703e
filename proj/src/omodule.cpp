#include "octofc/omodule.hpp"

#include <cmath>

#include "octofc/errors.hpp"

namespace octofc {

double OctVector::norm2() const {
  double s = 0.0;
  for (const auto& x : v_) s += x.norm2();
  return s;
}

double OctVector::norm() const { return std::sqrt(norm2()); }

OctVector OctVector::delta(std::size_t n, std::size_t j) {
  OctVector d(n);
  d[j] = Octonion(1.0);
  return d;
}

OctVector OctVector::coord_basis(std::size_t n, std::size_t k) {
  OctVector d(n);
  d[k / 8] = Octonion::unit(static_cast<int>(k % 8));
  return d;
}

OctVector& OctVector::operator+=(const OctVector& o) {
  if (o.size() != size()) throw DomainError("vector size mismatch");
  for (std::size_t i = 0; i < size(); ++i) v_[i] += o[i];
  return *this;
}

OctVector& OctVector::operator-=(const OctVector& o) {
  if (o.size() != size()) throw DomainError("vector size mismatch");
  for (std::size_t i = 0; i < size(); ++i) v_[i] -= o[i];
  return *this;
}

OctVector operator+(OctVector a, const OctVector& b) { return a += b; }
OctVector operator-(OctVector a, const OctVector& b) { return a -= b; }

OctVector operator*(double s, OctVector a) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= s;
  return a;
}

OctVector mul_left(const Octonion& p, const OctVector& x) {
  OctVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = p * x[i];
  return r;
}

OctVector mul_right(const OctVector& x, const Octonion& p) {
  OctVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] * p;
  return r;
}

double distance(const OctVector& a, const OctVector& b) { return (a - b).norm(); }

OctVector RealVector::embed() const {
  OctVector x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = Octonion(v[i]);
  return x;
}

Octonion RealFunctional::operator()(const OctVector& x) const {
  if (x.size() != r.size()) throw DomainError("functional size mismatch");
  Octonion s;
  for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * x[j];
  return s;
}

RealVector re_part(const OctVector& x) {
  RealVector r;
  r.v.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r.v[i] = x[i].re();
  return r;
}

OctVector re_embed(const OctVector& x) { return re_part(x).embed(); }

OctVector re_part_formula(const OctVector& x, const SliceFrame& frame) {
  OctVector r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    Octonion acc;
    for (int i = 1; i < 8; ++i) acc += (frame[i] * x[j]) * frame[i];
    r[j] = (5.0 / 12.0) * x[j] - (1.0 / 12.0) * acc;
  }
  return r;
}

OctVector re_part_formula(const OctVector& x) {
  static const SliceFrame standard = make_slice_frame(Octonion::unit(4));
  return re_part_formula(x, standard);
}

Octonion pi_project(const Octonion& x, const Octonion& J) {
  return Octonion(x.re()) + (J.conj() * x).re() * J;
}

OctVector pi_project(const OctVector& x, const Octonion& J) {
  if (!is_unit_imaginary(J, 1e-10)) throw DomainError("J must be a unit imaginary octonion");
  OctVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = pi_project(x[i], J);
  return r;
}

bool in_slice(const OctVector& x, const Octonion& J, double tol) {
  return distance(pi_project(x, J), x) <= tol * std::max(1.0, x.norm());
}

ReDecomposition re_decompose(const OctVector& x) {
  ReDecomposition d;
  for (int i = 0; i < 8; ++i) {
    d.parts[i].v.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) d.parts[i].v[j] = x[j][i];
  }
  return d;
}

OctVector ReDecomposition::reassemble() const {
  std::size_t n = parts[0].size();
  OctVector x(n);
  for (int i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < n; ++j) x[j] += parts[i].v[j] * Octonion::unit(i);
  return x;
}

OctVector random_oct_vector(std::size_t n, std::mt19937_64& rng) {
  OctVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = random_octonion(rng);
  return x;
}

}  // namespace octofc
