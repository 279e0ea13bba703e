#include "octofc/octonion.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "octofc/errors.hpp"

namespace octofc {

FanoTable::FanoTable() {
  for (int i = 0; i < 8; ++i) {
    table_[0][i] = {1, i};
    table_[i][0] = {1, i};
  }
  for (int i = 1; i < 8; ++i) table_[i][i] = {-1, 0};
  for (const auto& t : triples) {
    for (int r = 0; r < 3; ++r) {
      int a = t[r], b = t[(r + 1) % 3], c = t[(r + 2) % 3];
      table_[a][b] = {1, c};
      table_[b][a] = {-1, c};
    }
  }
}

const FanoTable& FanoTable::instance() {
  static const FanoTable t;
  return t;
}

int FanoTable::closure_defects() const {
  int bad = 0;
  for (int i = 1; i < 8; ++i) {
    if (table_[i][i].sign != -1 || table_[i][i].index != 0) ++bad;
    for (int j = 1; j < 8; ++j) {
      if (i == j) continue;
      auto p = table_[i][j], q = table_[j][i];
      if (p.index == 0 || p.index == i || p.index == j) ++bad;
      if (p.index != q.index || p.sign != -q.sign) ++bad;
      // e_i (e_i e_j) = -e_j
      auto r = table_[i][p.index];
      if (r.index != j || r.sign * p.sign != -1) ++bad;
    }
  }
  return bad;
}

Octonion& Octonion::operator+=(const Octonion& o) {
  for (int i = 0; i < 8; ++i) c[i] += o.c[i];
  return *this;
}

Octonion& Octonion::operator-=(const Octonion& o) {
  for (int i = 0; i < 8; ++i) c[i] -= o.c[i];
  return *this;
}

Octonion& Octonion::operator*=(double s) {
  for (auto& v : c) v *= s;
  return *this;
}

Octonion Octonion::conj() const {
  Octonion r = *this;
  for (int i = 1; i < 8; ++i) r.c[i] = -r.c[i];
  return r;
}

double Octonion::norm2() const {
  double s = 0.0;
  for (double v : c) s += v * v;
  return s;
}

double Octonion::norm() const { return std::sqrt(norm2()); }

Octonion Octonion::inv() const {
  double n2 = norm2();
  if (n2 == 0.0) throw DomainError("inverse of zero octonion");
  return conj() / n2;
}

Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
Octonion operator-(Octonion a) { return a *= -1.0; }
Octonion operator*(double s, Octonion a) { return a *= s; }
Octonion operator*(Octonion a, double s) { return a *= s; }
Octonion operator/(Octonion a, double s) { return a *= 1.0 / s; }

Octonion operator*(const Octonion& a, const Octonion& b) {
  const auto& t = FanoTable::instance();
  Octonion r;
  for (int i = 0; i < 8; ++i) {
    if (a.c[i] == 0.0) continue;
    for (int j = 0; j < 8; ++j) {
      auto e = t.product(i, j);
      r.c[e.index] += e.sign * a.c[i] * b.c[j];
    }
  }
  return r;
}

bool operator==(const Octonion& a, const Octonion& b) { return a.c == b.c; }

std::ostream& operator<<(std::ostream& os, const Octonion& x) {
  os << '[';
  for (int i = 0; i < 8; ++i) os << (i ? ", " : "") << x.c[i];
  return os << ']';
}

double dot(const Octonion& a, const Octonion& b) {
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += a.c[i] * b.c[i];
  return s;
}

double distance(const Octonion& a, const Octonion& b) { return (a - b).norm(); }

Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z) {
  return (x * y) * z - x * (y * z);
}

Octonion commutator(const Octonion& x, const Octonion& y) { return x * y - y * x; }

Octonion pow(const Octonion& x, int k) {
  Octonion base = k < 0 ? x.inv() : x;
  unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
  Octonion r(1.0);
  // powers of a single octonion associate, so square-and-multiply is fine
  while (e) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Octonion exp(const Octonion& x) {
  double a = x.re();
  Octonion v = x.im();
  double t = v.norm();
  double ea = std::exp(a);
  Octonion r(ea * std::cos(t));
  if (t > 0.0) r += (ea * std::sin(t) / t) * v;
  return r;
}

Octonion random_octonion(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  Octonion x;
  for (auto& v : x.c) v = nd(rng);
  return x;
}

Octonion random_unit_imaginary(std::mt19937_64& rng) {
  Octonion v;
  do {
    v = random_octonion(rng).im();
  } while (v.norm() < 1e-3);
  return v / v.norm();
}

IdentityReport identity_residuals(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  IdentityReport rep;
  rep.samples = samples;
  rep.table_defects = FanoTable::instance().closure_defects();
  for (int k = 0; k < samples; ++k) {
    Octonion x = random_octonion(rng), y = random_octonion(rng);
    Octonion z = random_octonion(rng), w = random_octonion(rng);
    double s3 = x.norm() * x.norm() * y.norm() * z.norm();
    double s4 = x.norm() * y.norm() * z.norm() * w.norm();
    double ml = ((x * y * x) * z - x * (y * (x * z))).norm();
    double mr = (z * (x * y * x) - ((z * x) * y) * x).norm();
    double mm = ((x * (y * z)) * x - (x * y) * (z * x)).norm();
    Octonion lhs = x * associator(y, z, w) + associator(x, y, z) * w;
    Octonion rhs = associator(x * y, z, w) - associator(x, y * z, w) + associator(x, y, z * w);
    double ft = (lhs - rhs).norm();
    double sa = x.norm() * x.norm() * y.norm();
    double art = std::max({associator(x, x, y).norm(), associator(x, y, y).norm(),
                           associator(x, y, x).norm()});
    rep.moufang_left = std::max(rep.moufang_left, ml);
    rep.moufang_right = std::max(rep.moufang_right, mr);
    rep.moufang_middle = std::max(rep.moufang_middle, mm);
    rep.five_term = std::max(rep.five_term, ft);
    rep.artin = std::max(rep.artin, art);
    rep.max_scaled = std::max({rep.max_scaled, ml / s3, mr / s3, mm / s3, ft / s4, art / sa});
  }
  return rep;
}

bool is_unit_imaginary(const Octonion& J, double tol) {
  return std::abs(J.re()) <= tol && std::abs(J.norm2() - 1.0) <= tol;
}

namespace {

// first standard unit whose component orthogonal to `span` is large enough
Octonion orthogonal_unit(const std::vector<Octonion>& span) {
  for (int k = 1; k < 8; ++k) {
    Octonion v = Octonion::unit(k);
    for (const auto& u : span) v -= dot(v, u) * u;
    if (v.norm2() >= 0.5) return v / v.norm();
  }
  throw DomainError("no orthogonal unit found");
}

}  // namespace

SliceFrame make_slice_frame(const Octonion& J) {
  if (!is_unit_imaginary(J, 1e-10)) throw DomainError("J must be a unit imaginary octonion");
  Octonion one(1.0);
  Octonion j1 = orthogonal_unit({one, J});
  Octonion j2 = orthogonal_unit({one, J, j1, j1 * J});
  Octonion j3 = j1 * j2;
  SliceFrame f;
  f.units = {one, j1, j2, j3, J, j1 * J, j2 * J, j3 * J};
  return f;
}

std::array<double, 8> frame_coords(const Octonion& x, const SliceFrame& f) {
  std::array<double, 8> a{};
  for (int i = 0; i < 8; ++i) a[i] = dot(x, f.units[i]);
  return a;
}

Octonion from_frame_coords(const std::array<double, 8>& a, const SliceFrame& f) {
  Octonion x;
  for (int i = 0; i < 8; ++i) x += a[i] * f.units[i];
  return x;
}

double frame_table_defect(const SliceFrame& f) {
  const auto& t = FanoTable::instance();
  double worst = 0.0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      auto e = t.product(i, j);
      Octonion expect = e.sign * f.units[e.index];
      worst = std::max(worst, distance(f.units[i] * f.units[j], expect));
      worst = std::max(worst, std::abs(dot(f.units[i], f.units[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace octofc
