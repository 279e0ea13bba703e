#include <cmath>
#include <sstream>

#include "octofc/cli.hpp"
#include "octofc/errors.hpp"

namespace octofc {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

ExampleOutcome guarded(const std::string& name, const std::function<ExampleOutcome()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("error: ") + e.what()};
  }
}

OctMatrix diag_example() {
  return OctMatrix::diagonal({Octonion::unit(1), 2.0 * Octonion::unit(2), 3.0 * Octonion::unit(4)});
}

OctMatrix nonsphere_example() {
  OctMatrix T(2);
  T(0, 1) = -Octonion::unit(1);
  T(1, 0) = Octonion::unit(1);
  return T;
}

bool scan_matches(const OctMatrix& T, const Octonion& J, const GridSpec& g,
                  const std::vector<std::pair<double, double>>& expected, std::string& detail) {
  ScanGrid pull = scan_slice(T, J, g, SpectrumKind::Pullback);
  for (auto kind : {SpectrumKind::Pullback, SpectrumKind::Pushforward}) {
    ScanGrid s = kind == SpectrumKind::Pullback ? pull : relocate(pull, kind);
    if (!points_match(s.points, expected, s.cell)) {
      std::size_t flagged = 0;
      for (const auto& p : s.points) flagged += p.cells;
      detail = to_string(kind) + " scan found " + std::to_string(s.points.size()) + " clusters over " +
               std::to_string(flagged) + " cells";
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<ExampleOutcome> run_examples() {
  std::vector<ExampleOutcome> out;
  const double r5 = std::sqrt(5.0);

  out.push_back(guarded("sigma_star_Lq", [&] {
    Octonion q = Octonion::unit(1) + 2.0 * Octonion::unit(2);
    OctMatrix T = OctMatrix::left_mult(q);
    GridSpec g{-3.0, 3.0, 0.0, 3.0, 61, 31};
    std::string detail;
    bool ok = true;
    for (const auto& J : {Octonion::unit(1), Octonion::unit(4)}) ok = ok && scan_matches(T, J, g, {{0.0, r5}}, detail);
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      Octonion a = random_octonion(rng), s = random_octonion(rng);
      double d = det_rs_minus_lq(a, s);
      worst = std::max(worst, std::abs(d - det_numeric(rs_minus_t(OctMatrix::left_mult(a), s))) / std::max(1.0, d));
    }
    ok = ok && worst <= 1e-8;
    if (detail.empty()) detail = "det rel " + fmt(worst);
    return ExampleOutcome{"sigma_star_Lq", ok, detail};
  }));

  out.push_back(guarded("diag_spectrum", [&] {
    GridSpec g{-4.0, 4.0, 0.0, 4.0, 61, 31};
    std::string detail;
    bool ok = true;
    Octonion J3 = (Octonion::unit(2) + Octonion::unit(3)) / std::sqrt(2.0);
    for (const auto& J : {Octonion::unit(4), J3})
      ok = ok && scan_matches(diag_example(), J, g, {{0.0, 1.0}, {0.0, 2.0}, {0.0, 3.0}}, detail);
    return ExampleOutcome{"diag_spectrum", ok, detail};
  }));

  out.push_back(guarded("nonsphere_matrix", [&] {
    OctMatrix T = nonsphere_example();
    GridSpec g{-2.0, 2.0, 0.0, 2.0, 61, 31};
    std::string detail;
    bool ok = scan_matches(T, Octonion::unit(1), g, {{-1.0, 0.0}, {1.0, 0.0}}, detail);
    ok = ok && scan_matches(T, Octonion::unit(2), g, {{-1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, detail);
    auto m = membership(T, Octonion::unit(1), Octonion::unit(1));
    ok = ok && m.in_pullback && m.in_pushforward;
    if (!m.in_pullback) detail = "e1 flagged";
    return ExampleOutcome{"nonsphere_matrix", ok, detail};
  }));

  out.push_back(guarded("cauchy_Lq", [&] {
    Octonion q = Octonion(1.0) + Octonion::unit(1) + Octonion::unit(2);
    OctMatrix T = OctMatrix::left_mult(q);
    double worst = 0.0;
    for (auto side : {Side::Left, Side::Right}) {
      for (const auto& p : {SlicePolynomial::monomial(2, side), SlicePolynomial::exp_truncated(30, side)}) {
        for (const auto& J : {Octonion::unit(4), Octonion::unit(1)}) {
          CalcRequest req{T, SliceFunction::from(p), default_contour(T, J), side, {}};
          OctMatrix expect = OctMatrix::left_mult(p(q));
          worst = std::max(worst, frobenius_distance(functional_calculus(req).value, expect));
        }
      }
    }
    return ExampleOutcome{"cauchy_Lq", worst <= 1e-8, "max dev " + fmt(worst)};
  }));

  out.push_back(guarded("polynomial_calculus", [&] {
    double worst = 0.0;
    for (const auto& T : {diag_example(), nonsphere_example()}) {
      for (auto side : {Side::Left, Side::Right}) {
        for (int m = 0; m <= 4; ++m) {
          SliceContour c{Octonion::unit(4), 0.0, 4.0, 1024};
          CalcRequest req{T, SliceFunction::from(SlicePolynomial::monomial(m, side)), c, side, {}};
          worst = std::max(worst, frobenius_distance(functional_calculus(req).value, matrix_power(T, m)));
        }
      }
    }
    return ExampleOutcome{"polynomial_calculus", worst <= 1e-8, "max dev " + fmt(worst)};
  }));

  out.push_back(guarded("resolvent_series", [&] {
    OctMatrix T = diag_example();
    double worst = 0.0;
    for (auto side : {Side::Left, Side::Right}) {
      Octonion s = slice_point(3.0, 4.0, Octonion::unit(6));
      OctMatrix S = resolvent_series(T, s, side, 60);
      worst = std::max(worst, operator_norm(realize(S - reg_inverse(rs_minus_t(T, s), side))));
    }
    return ExampleOutcome{"resolvent_series", worst <= 1e-8, "defect " + fmt(worst)};
  }));

  return out;
}

}  // namespace octofc
