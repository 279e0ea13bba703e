#include "octofc/slicefun.hpp"

#include <cmath>
#include <sstream>

#include "octofc/errors.hpp"

namespace octofc {

bool SlicePolynomial::slice_preserving() const {
  for (const auto& a : coeffs)
    if (a.im().norm2() != 0.0) return false;
  return true;
}

Octonion SlicePolynomial::operator()(const Octonion& q) const { return eval_slice(*this, q); }

SlicePolynomial SlicePolynomial::monomial(int m, Side side) {
  if (m < 0) throw DomainError("monomial degree must be >= 0");
  SlicePolynomial p{side, std::vector<Octonion>(m + 1)};
  p.coeffs[m] = Octonion(1.0);
  return p;
}

SlicePolynomial SlicePolynomial::constant(const Octonion& a, Side side) { return {side, {a}}; }

SlicePolynomial SlicePolynomial::exp_truncated(int N, Side side) {
  if (N < 0) throw DomainError("exp truncation order must be >= 0");
  SlicePolynomial p{side, {}};
  double c = 1.0;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) c /= k;
    p.coeffs.emplace_back(c);
  }
  return p;
}

SlicePolynomial SlicePolynomial::real(const std::vector<double>& c, Side side) {
  SlicePolynomial p{side, {}};
  for (double v : c) p.coeffs.emplace_back(v);
  return p;
}

SlicePolynomial flip_side(const SlicePolynomial& f) {
  return {f.side == Side::Left ? Side::Right : Side::Left, f.coeffs};
}

Octonion eval_slice(const SlicePolynomial& f, const Octonion& q) {
  // Horner in q; q^k a_k and a_k q^k both reduce to it since powers of q associate with a_k
  Octonion acc;
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
    acc = f.side == Side::Left ? q * acc + *it : acc * q + *it;
  }
  return acc;
}

StemFunction stem_of(const SlicePolynomial& f) {
  StemFunction F;
  F.side = f.side;
  auto parts = [coeffs = f.coeffs](std::complex<double> z, bool imag) {
    Octonion acc;
    std::complex<double> zk = 1.0;
    for (const auto& a : coeffs) {
      acc += (imag ? zk.imag() : zk.real()) * a;
      zk *= z;
    }
    return acc;
  };
  F.F1 = [parts](std::complex<double> z) { return parts(z, false); };
  F.F2 = [parts](std::complex<double> z) { return parts(z, true); };
  return F;
}

Octonion eval_slice(const StemFunction& F, const Octonion& q) {
  Octonion v = q.im();
  double y = v.norm();
  std::complex<double> z(q.re(), y);
  Octonion f1 = F.F1(z);
  if (y == 0.0) return f1;
  Octonion J = v / y;
  Octonion f2 = F.F2(z);
  return F.side == Side::Left ? f1 + J * f2 : f1 + f2 * J;
}

double stem_condition_defect(const StemFunction& F, const std::vector<std::complex<double>>& zs) {
  double worst = 0.0;
  for (auto z : zs) {
    worst = std::max(worst, distance(F.F1(std::conj(z)), F.F1(z)));
    worst = std::max(worst, (F.F2(std::conj(z)) + F.F2(z)).norm());
  }
  return worst;
}

SliceFunction SliceFunction::from(const SlicePolynomial& p) {
  SliceFunction f;
  f.side = p.side;
  f.preserving = p.slice_preserving();
  f.eval = [p](const Octonion& q) { return eval_slice(p, q); };
  f.name = "polynomial";
  return f;
}

SliceFunction SliceFunction::from(const StemFunction& F, bool preserving) {
  SliceFunction f;
  f.side = F.side;
  f.preserving = preserving;
  f.eval = [F](const Octonion& q) { return eval_slice(F, q); };
  f.name = "stem";
  return f;
}

SlicePolynomial slice_product(const SlicePolynomial& f, const SlicePolynomial& g) {
  if (f.side != g.side) throw DomainError("slice product needs functions of the same side");
  SlicePolynomial c{f.side, {}};
  if (f.coeffs.empty() || g.coeffs.empty()) return c;
  c.coeffs.assign(f.coeffs.size() + g.coeffs.size() - 1, Octonion());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) c.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
  return c;
}

Octonion q_char(const Octonion& s, const Octonion& q) {
  return q * q - (2.0 * s.re()) * q + Octonion(s.norm2());
}

Octonion cauchy_kernel(const Octonion& s, const Octonion& q, Side side) {
  Octonion Q = q_char(s, q);
  double scale = std::max(1.0, s.norm2() + q.norm2());
  if (Q.norm() <= 1e-14 * scale) {
    std::ostringstream os;
    os << "Cauchy kernel pole: q " << q << " lies on the sphere of s " << s;
    throw DomainError(os.str());
  }
  Octonion Qi = Q.inv(), d = s.conj() - q;
  return side == Side::Left ? Qi * d : d * Qi;
}

Octonion SliceContour::node(int k) const {
  double t = 2.0 * M_PI * k / nodes;
  return slice_point(center + radius * std::cos(t), radius * std::sin(t), J);
}

Octonion SliceContour::weight(int k) const { return (node(k) - Octonion(center)) / nodes; }

void SliceContour::validate() const {
  if (!is_unit_imaginary(J, 1e-10)) throw DomainError("contour J must be a unit imaginary octonion");
  if (!(radius > 0.0)) throw DomainError("contour radius must be positive");
  if (nodes < 8) throw DomainError("contour needs at least 8 nodes");
}

bool SliceContour::encloses(const Octonion& q, double margin) const {
  return std::hypot(q.re() - center, q.im().norm()) < radius - margin;
}

std::array<Octonion, 8> slice_components(const SliceFunction& f, const SliceFrame& frame,
                                         const Octonion& s) {
  const Octonion& J = frame.J();
  Octonion a = f(s), b = f(s.conj());
  Octonion even = 0.5 * (a + b), odd = 0.5 * (a - b);
  // odd = sum_i beta_i J J_i (left) or sum_i beta_i J_i J (right)
  Octonion odd_coeffs = f.side == Side::Left ? -(J * odd) : -(odd * J);
  auto alpha = frame_coords(even, frame), beta = frame_coords(odd_coeffs, frame);
  std::array<Octonion, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = Octonion(alpha[i]) + beta[i] * J;
  return out;
}

namespace {

Octonion cauchy_sum(const SliceFunction& f, const Octonion& q, const SliceContour& c, int stride) {
  const SliceFrame frame = make_slice_frame(c.J);
  const double w = static_cast<double>(stride);
  if (f.preserving) {
    Octonion acc;
    for (int k = 0; k < c.nodes; k += stride) {
      Octonion s = c.node(k), ds = w * c.weight(k);
      acc += f.side == Side::Left ? cauchy_kernel(s, q, Side::Left) * (ds * f(s))
                                  : (f(s) * ds) * cauchy_kernel(s, q, Side::Right);
    }
    return acc;
  }
  std::array<Octonion, 8> acc{};
  for (int k = 0; k < c.nodes; k += stride) {
    Octonion s = c.node(k), ds = w * c.weight(k);
    auto comp = slice_components(f, frame, s);
    Octonion ker = cauchy_kernel(s, q, f.side);
    for (int i = 0; i < 8; ++i)
      acc[i] += f.side == Side::Left ? ker * (ds * comp[i]) : (comp[i] * ds) * ker;
  }
  Octonion out;
  for (int i = 0; i < 8; ++i) out += f.side == Side::Left ? acc[i] * frame[i] : frame[i] * acc[i];
  return out;
}

}  // namespace

CauchyResult slice_cauchy_eval(const SliceFunction& f, const Octonion& q, const SliceContour& c) {
  c.validate();
  if (!c.encloses(q)) throw DomainError("point is not enclosed by the contour");
  CauchyResult r;
  r.value = cauchy_sum(f, q, c, 1);
  if (c.nodes % 2 == 0) r.error_estimate = distance(r.value, cauchy_sum(f, q, c, 2));
  return r;
}

Octonion slice_cauchy_eval_product_form(const SliceFunction& f, const Octonion& q, const SliceContour& c) {
  c.validate();
  if (!c.encloses(q)) throw DomainError("point is not enclosed by the contour");
  Octonion v = q.im();
  double y = v.norm();
  Octonion I = y > 0.0 ? v / y : c.J;
  Octonion qb = slice_point(q.re(), -y, I);
  Octonion acc;
  for (int k = 0; k < c.nodes; ++k) {
    Octonion s = c.node(k), ds = c.weight(k);
    Octonion hq = cauchy_kernel(s, q, f.side), hb = cauchy_kernel(s, qb, f.side);
    Octonion H1 = 0.5 * (hq + hb);
    if (f.side == Side::Left) {
      Octonion H2 = -(I * (0.5 * (hq - hb)));
      Octonion p = ds * f(s);
      acc += H1 * p + I * (H2 * p);
    } else {
      Octonion H2 = -((0.5 * (hq - hb)) * I);
      Octonion p = f(s) * ds;
      acc += p * H1 + (p * H2) * I;
    }
  }
  return acc;
}

double regularity_residual(const SliceFunction& f, const Octonion& q, double h) {
  Octonion v = q.im();
  double y = v.norm();
  if (y == 0.0) throw DomainError("regularity residual needs a non-real point");
  if (!(h > 0.0)) throw DomainError("step must be positive");
  Octonion J = v / y;
  double x = q.re();
  Octonion fx = (f(slice_point(x + h, y, J)) - f(slice_point(x - h, y, J))) / (2 * h);
  Octonion fy = (f(slice_point(x, y + h, J)) - f(slice_point(x, y - h, J))) / (2 * h);
  return (f.side == Side::Left ? fx + J * fy : fx + fy * J).norm();
}

std::array<ComplexFn, 4> split_components(const SliceFunction& f, const Octonion& J) {
  SliceFrame frame = make_slice_frame(J);
  // J J_i = -J_{i+4} and J_i J = J_{i+4} for i = 1..3
  const double sgn = f.side == Side::Left ? -1.0 : 1.0;
  std::array<ComplexFn, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = [f, frame, i, sgn](std::complex<double> z) {
      auto a = frame_coords(f(slice_point(z.real(), z.imag(), frame.J())), frame);
      double im = i == 0 ? a[4] : sgn * a[i + 4];
      return std::complex<double>(a[i], im);
    };
  }
  return out;
}

double cauchy_riemann_defect(const ComplexFn& F, std::complex<double> z, double h) {
  const std::complex<double> I(0.0, 1.0);
  auto Fx = (F(z + h) - F(z - h)) / (2 * h);
  auto Fy = (F(z + I * h) - F(z - I * h)) / (2 * h);
  return std::abs(Fx + I * Fy);
}

}  // namespace octofc
