// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: octofc_acceptance [criterion...]; no arguments runs all of them.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "octofc/errors.hpp"
#include "octofc/funcalc.hpp"
#include "oracles.hpp"

using namespace octofc;

namespace {

Octonion e(int i) { return Octonion::unit(i); }
OctMatrix diag_op() { return OctMatrix::diagonal({e(1), 2.0 * e(2), 3.0 * e(4)}); }
OctMatrix rotation_op() {
  OctMatrix T(2);
  T(0, 1) = -e(1);
  T(1, 0) = e(1);
  return T;
}
const double kRoot2 = std::sqrt(2.0);

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << why << "; ";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string describe(const ScanGrid& g) {
  std::ostringstream os;
  os << g.points.size() << " clusters [";
  for (std::size_t i = 0; i < g.points.size(); ++i)
    os << (i ? " " : "") << "(" << g.points[i].x << "," << g.points[i].y << ")x" << g.points[i].cells;
  os << "]";
  return os.str();
}

void algebra(Outcome& o) {
  IdentityReport r = identity_residuals(10000, 20240601);
  o.require(r.max_scaled <= 1e-12, "identity residual " + sci(r.max_scaled));
  o.require(r.table_defects == 0 && FanoTable::instance().closure_defects() == 0, "table not closed");
  int mismatches = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (!(e(i) * e(j) == oracle::mul(e(i), e(j)))) ++mismatches;
  o.require(mismatches == 0, std::to_string(mismatches) + " table entries differ from the structure constants");
  o.detail << "max scaled residual " << sci(r.max_scaled) << " over " << r.samples << " samples";
}

void real_part(Outcome& o) {
  std::mt19937_64 rng(2);
  std::vector<SliceFrame> frames{make_slice_frame(e(4))};
  for (int k = 0; k < 10; ++k) frames.push_back(make_slice_frame(random_unit_imaginary(rng)));
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    OctVector x = random_oct_vector(3, rng);
    OctVector ref(3);
    for (std::size_t i = 0; i < 3; ++i) ref[i] = Octonion(x[i][0]);
    worst = std::max(worst, distance(re_part_formula(x), ref));
    for (const auto& f : frames) worst = std::max(worst, distance(re_part_formula(x, f), ref));
  }
  o.require(worst <= 1e-13, "worst " + sci(worst));
  o.detail << "worst deviation " << sci(worst) << " over 11 frames";
}

void resolvent_series_check(Outcome& o) {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  OctMatrix T = diag_op();
  for (int k = 0; k < 20; ++k) {
    Octonion s = random_octonion(rng);
    s = (5.0 / s.norm()) * s;
    for (auto side : {Side::Left, Side::Right}) {
      OctMatrix ser = resolvent_series(T, s, side, 60);
      OctMatrix inv = reg_inverse(rs_minus_t(T, s), side);
      worst = std::max(worst, operator_norm(ser - inv));
    }
  }
  o.require(worst <= 1e-8, "worst " + sci(worst));
  o.detail << "worst operator-norm gap " << sci(worst);
}

void general_series(Outcome& o) {
  std::mt19937_64 rng(4);
  double worst_ratio = 0.0;
  int counted = 0;
  while (counted < 5) {
    OctMatrix T = random_oct_matrix(2, rng, 0.5);
    if (power_assoc_check(T).ok) continue;
    ++counted;
    Octonion J = random_unit_imaginary(rng);
    double r = 1.6 * operator_norm(T);
    double t = std::uniform_real_distribution<double>(0.0, 6.283185307179586)(rng);
    Octonion s = slice_point(r * std::cos(t), r * std::sin(t), J);
    std::normal_distribution<double> g;
    OctVector xs(2);
    for (std::size_t i = 0; i < 2; ++i) xs[i] = slice_point(g(rng), g(rng), J);
    OctVector xa = random_oct_vector(2, rng);
    for (int N : {8, 20, 40}) {
      auto res = series_residual_general(T, s, J, xs, xa, N);
      worst_ratio = std::max({worst_ratio, res.alpha_residual / res.alpha_bound, res.beta_residual / res.beta_bound});
      o.require(res.alpha_residual <= 10.0 * res.alpha_bound, "alpha " + sci(res.alpha_residual));
      o.require(res.beta_residual <= 10.0 * res.beta_bound, "beta " + sci(res.beta_residual));
    }
  }
  o.detail << "worst residual/tail ratio " << sci(worst_ratio);
}

bool scan_both(const OctMatrix& T, const Octonion& J, const GridSpec& g,
               const std::vector<std::pair<double, double>>& expect, const std::string& label, Outcome& o) {
  bool ok = true;
  ScanGrid pull = scan_slice(T, J, g, SpectrumKind::Pullback);
  for (auto kind : {SpectrumKind::Pullback, SpectrumKind::Pushforward}) {
    ScanGrid s = kind == SpectrumKind::Pullback ? pull : relocate(pull, kind);
    bool m = points_match(s.points, expect, s.cell);
    o.require(m, label + (kind == SpectrumKind::Pullback ? " pull-back " : " push-forward ") + describe(s));
    ok = ok && m;
  }
  return ok;
}

void lq_spectrum(Outcome& o) {
  Octonion q = e(1) + 2.0 * e(2);
  OctMatrix L = OctMatrix::left_mult(q);
  GridSpec g{-3.0, 3.0, 0.0, 3.0, 200, 200};
  scan_both(L, e(1), g, {{0.0, std::sqrt(5.0)}}, "C_e1", o);
  scan_both(L, e(4), g, {{0.0, std::sqrt(5.0)}}, "C_e4", o);
  scan_both(L, (e(2) + e(3)) / kRoot2, g, {{0.0, std::sqrt(5.0)}}, "C_(e2+e3)", o);
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Octonion a = random_octonion(rng), s = random_octonion(rng);
    double d = oracle::det(rs_minus_t(OctMatrix::left_mult(a), s).m);
    worst = std::max(worst, std::abs(det_rs_minus_lq(a, s) - d) / std::max(std::abs(d), 1e-300));
  }
  o.require(worst <= 1e-8, "determinant relative gap " + sci(worst));
  o.detail << "3 slices located; determinant relative gap " << sci(worst);
}

void diag_spectrum(Outcome& o) {
  std::mt19937_64 rng(6);
  GridSpec g{-4.0, 4.0, 0.0, 4.0, 200, 200};
  std::vector<std::pair<Octonion, std::string>> Js{{e(1), "C_e1"}, {e(2), "C_e2"}, {e(4), "C_e4"}, {e(7), "C_e7"},
                                                   {(e(2) + e(3)) / kRoot2, "C_(e2+e3)"},
                                                   {random_unit_imaginary(rng), "random slice"}};
  for (const auto& [J, name] : Js) scan_both(diag_op(), J, g, {{0.0, 1.0}, {0.0, 2.0}, {0.0, 3.0}}, name, o);
  o.detail << Js.size() << " slices";
}

void rotation_spectrum(Outcome& o) {
  OctMatrix T = rotation_op();
  scan_both(T, e(1), GridSpec{-2.0, 2.0, -2.0, 2.0, 200, 200}, {{-1.0, 0.0}, {1.0, 0.0}}, "C_e1", o);
  std::vector<std::pair<Octonion, std::string>> orth{{e(2), "C_e2"}, {e(4), "C_e4"}, {(e(3) + e(6)) / kRoot2, "C_(e3+e6)"}};
  for (const auto& [J, name] : orth)
    scan_both(T, J, GridSpec{-2.0, 2.0, -2.0, 2.0, 200, 200}, {{-1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}},
              name + " expecting +-1, +-J", o);
  auto m = membership(T, e(1), e(1));
  o.require(m.in_pullback && m.in_pushforward, "e1 flagged");
  if (o.pass) o.detail << "isolated points found; e1 resolvent";
}

void polynomial_calculus(Outcome& o) {
  double worst = 0.0;
  for (const auto& T : {diag_op(), rotation_op()}) {
    for (const auto& J : {e(4), (e(2) + e(3)) / kRoot2}) {
      for (auto side : {Side::Left, Side::Right}) {
        for (int m = 0; m <= 4; ++m) {
          CalcRequest req{T, SliceFunction::from(SlicePolynomial::monomial(m, side)), SliceContour{J, 0.0, 4.0, 1024},
                          side, {}};
          worst = std::max(worst, frobenius_distance(functional_calculus(req).value, oracle::matpow(T, m)));
        }
      }
    }
  }
  o.require(worst <= 1e-8, "worst " + sci(worst));
  o.detail << "worst Frobenius gap " << sci(worst);
}

void left_mult_calculus(Outcome& o) {
  Octonion q = Octonion(1.0) + e(1) + e(2);
  OctMatrix L = OctMatrix::left_mult(q);
  std::vector<Octonion> Js{e(1), e(4), e(7), (e(1) + e(2)) / kRoot2, (e(3) + e(5)) / kRoot2};
  double worst = 0.0;
  for (auto side : {Side::Left, Side::Right}) {
    std::vector<std::pair<SlicePolynomial, Octonion>> cases{
        {SlicePolynomial::monomial(2, side), oracle::mul(q, q)},
        {SlicePolynomial::monomial(3, side), oracle::mul(q, oracle::mul(q, q))},
        {SlicePolynomial::exp_truncated(30, side), Octonion()}};
    // closed form: e^a (cos|v| + sin|v| v/|v|)
    Octonion v = q.im();
    cases[2].second = std::exp(q.re()) * (Octonion(std::cos(v.norm())) + (std::sin(v.norm()) / v.norm()) * v);
    for (const auto& [f, fq] : cases) {
      for (const auto& J : Js) {
        CalcRequest req{L, SliceFunction::from(f), default_contour(L, J), side, {}};
        worst = std::max(worst, frobenius_distance(functional_calculus(req).value, OctMatrix::left_mult(fq)));
      }
    }
  }
  o.require(worst <= 1e-8, "worst " + sci(worst));
  o.detail << "worst gap " << sci(worst) << " over 5 slices";
}

void slice_independence(Outcome& o) {
  auto units = structured_units();
  o.require(units.size() == 28, "unit set size");
  double worst_re = 0.0;
  struct Case {
    OctMatrix T;
    SlicePolynomial f;
    double r;
  };
  std::mt19937_64 rng(10);
  SlicePolynomial general{Side::Left, {random_octonion(rng), random_octonion(rng), random_octonion(rng)}};
  SlicePolynomial generalR = general;
  generalR.side = Side::Right;
  std::vector<Case> cases{{diag_op(), SlicePolynomial::monomial(3), 4.0},
                          {diag_op(), SlicePolynomial::monomial(3, Side::Right), 4.0},
                          {diag_op(), SlicePolynomial::exp_truncated(30), 4.0},
                          {diag_op(), general, 4.0},
                          {diag_op(), generalR, 4.0},
                          {rotation_op(), SlicePolynomial::exp_truncated(30, Side::Right), 2.0},
                          {OctMatrix::left_mult(Octonion(1.0) + e(1) + e(2)), SlicePolynomial::exp_truncated(30), 3.0}};
  for (const auto& c : cases) {
    auto fld = sphere_probe(c.T, SliceFunction::from(c.f), units, c.f.side, c.r, 512);
    worst_re = std::max(worst_re, fld.max_re_dev);
  }
  o.require(worst_re <= 1e-8, "max_re_dev " + sci(worst_re));
  double worst_c = 0.0;
  Octonion J = (e(2) + e(3)) / kRoot2;
  for (auto side : {Side::Left, Side::Right}) {
    CalcRequest a{diag_op(), SliceFunction::from(SlicePolynomial::monomial(2, side)), SliceContour{J, 0.0, 4.0, 1024}, side, {}};
    worst_c = std::max(worst_c, contour_independence_check(a, 4.0, 6.0));
    CalcRequest b{rotation_op(), SliceFunction::from(SlicePolynomial::exp_truncated(30, side)),
                  SliceContour{e(5), 0.0, 2.0, 1024}, side, {}};
    worst_c = std::max(worst_c, contour_independence_check(b, 2.0, 3.0));
  }
  o.require(worst_c <= 1e-8, "contour gap " + sci(worst_c));
  o.detail << "max_re_dev " << sci(worst_re) << ", contour gap " << sci(worst_c);
}

void product_property(Outcome& o) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 3);
  double worst = 0.0;
  std::vector<Octonion> Js{e(3), (e(2) + e(3)) / kRoot2};
  for (int k = 0; k < 20; ++k) {
    std::vector<double> a(deg(rng) + 1), b(deg(rng) + 1);
    for (auto& c : a) c = u(rng);
    for (auto& c : b) c = u(rng);
    SlicePolynomial f = SlicePolynomial::real(a, Side::Right), g = SlicePolynomial::real(b, Side::Left);
    const Octonion& J = Js[k % 2];
    auto r1 = product_property_check(diag_op(), f, g, J, 4.0, 1024);
    auto r2 = product_property_check(rotation_op(), f, g, J, 2.0, 1024);
    worst = std::max({worst, r1.deviation, r2.deviation, r1.tilde_deviation, r2.tilde_deviation});
  }
  o.require(worst <= 1e-7, "worst " + sci(worst));
  o.detail << "worst deviation " << sci(worst);
}

void resolvent_regularity(Outcome& o) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-4.0, 4.0), up(0.1, 4.0);
  double worst = 1e9;
  int tested = 0;
  for (const auto& T : {diag_op(), rotation_op()}) {
    int got = 0;
    while (got < 50) {
      Octonion J = random_unit_imaginary(rng);
      double x = u(rng), y = up(rng);
      RealFunctional phi{std::vector<double>(T.n())};
      RealVector v{std::vector<double>(T.n())};
      std::normal_distribution<double> g;
      for (auto& c : phi.r) c = g(rng);
      for (auto& c : v.v) c = g(rng);
      bool ok = true;
      for (auto kind : {SpectrumKind::Pullback, SpectrumKind::Pushforward}) {
        try {
          auto r = regularity_order(T, J, x, y, phi, v, kind);
          worst = std::min(worst, r.order);
          o.require(r.order >= 1.8, "order " + sci(r.order) + " at (" + std::to_string(x) + "," + std::to_string(y) + ")");
        } catch (const PreconditionError&) {
          ok = false;  // not a resolvent point, draw again
          break;
        }
      }
      if (ok) {
        ++got;
        ++tested;
      }
    }
  }
  o.detail << tested << " points, minimum order " << sci(worst);
}

void binomial_powers(Outcome& o) {
  double worst = 0.0;
  Octonion J = (e(2) + e(3)) / kRoot2;
  for (const auto& T : {diag_op(), rotation_op()}) {
    double r = 2.5 * operator_norm(T);
    for (int m = 1; m <= 4; ++m) {
      Octonion s = slice_point(0.6 * r, 0.8 * r, J);
      worst = std::max(worst, resolvent_power_defect(T, s, J, m, 160));
    }
  }
  o.require(worst <= 1e-8, "power defect " + sci(worst));
  // C(m+n-1, m-1) from an independent Pascal triangle
  int bad = 0;
  std::vector<std::vector<unsigned long long>> C(80, std::vector<unsigned long long>(80, 0));
  for (int i = 0; i < 80; ++i) {
    C[i][0] = 1;
    for (int j = 1; j <= i; ++j) C[i][j] = C[i - 1][j - 1] + (j <= i - 1 ? C[i - 1][j] : 0);
  }
  auto table = amn_table(12, 64);
  for (int m = 1; m <= 12; ++m) {
    for (int n = 0; n <= 64; ++n) {
      unsigned long long ref = C[m + n - 1][m - 1];
      if (amn(m, n) != ref || table.exact[m][n] != ref) ++bad;
      if (m >= 2 && n >= 1 && amn(m, n) != amn(m - 1, n) + amn(m, n - 1)) ++bad;
    }
  }
  o.require(bad == 0, std::to_string(bad) + " coefficients wrong");
  o.detail << "power defect " << sci(worst) << ", coefficient table exact";
}

struct Criterion {
  int id;
  const char* label;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all{{1, "octonion identities", algebra},
                             {2, "real-part formula", real_part},
                             {3, "resolvent series", resolvent_series_check},
                             {4, "general series identities", general_series},
                             {5, "spectrum of L_q", lq_spectrum},
                             {6, "diagonal operator spectrum", diag_spectrum},
                             {7, "rotation operator spectrum", rotation_spectrum},
                             {8, "polynomial calculus", polynomial_calculus},
                             {9, "calculus of L_q", left_mult_calculus},
                             {10, "slice independence of Re", slice_independence},
                             {11, "product property", product_property},
                             {12, "resolvent slice regularity", resolvent_regularity},
                             {13, "binomial resolvent powers", binomial_powers}};
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && std::find(pick.begin(), pick.end(), c.id) == pick.end()) continue;
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << "exception: " << ex.what();
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.label, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
