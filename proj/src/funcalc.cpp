#include "octofc/funcalc.hpp"

#include <cmath>
#include <sstream>

#include "octofc/errors.hpp"
#include "octofc/parallel.hpp"

namespace octofc {

SliceContour default_contour(const OctMatrix& T, const Octonion& J, int nodes) {
  SliceContour c;
  c.J = J;
  c.center = 0.0;
  c.radius = 1.1 * (operator_norm(T) + 0.1);
  c.nodes = nodes;
  return c;
}

void check_enclosure(const OctMatrix& T, const SliceContour& c, const CalcOptions& opt) {
  const double tnorm = operator_norm(T);
  // both spectra sit in the closed ball of radius ||T||
  if (std::abs(c.center) + tnorm < c.radius) return;
  GridSpec g;
  g.xmin = -tnorm - 1e-3;
  g.xmax = tnorm + 1e-3;
  g.ymin = -tnorm - 1e-3;
  g.ymax = tnorm + 1e-3;
  g.nx = g.ny = std::max(opt.enclosure_res, 3);
  ScanGrid scan = scan_slice(T, c.J, g, SpectrumKind::Pullback, opt.spectra);
  ScanGrid scan2 = scan_slice(T, c.J, g, SpectrumKind::Pushforward, opt.spectra);
  for (const auto* sg : {&scan, &scan2}) {
    for (const auto& p : sg->points) {
      if (std::hypot(p.x, p.y) > tnorm + sg->cell) continue;
      if (std::hypot(p.x - c.center, p.y) >= c.radius - sg->cell) {
        std::ostringstream os;
        os << "spectral point near (" << p.x << ", " << p.y << ") is not enclosed by the contour";
        throw PreconditionError(os.str());
      }
    }
  }
}

namespace {

void check_power_assoc(const OctMatrix& T, const CalcOptions& opt, double& residual, std::string& condition) {
  residual = 0.0;
  if (opt.allow_non_pa) {
    condition = "skipped";
    return;
  }
  // commuting real components is sufficient
  double scale = 1.0;
  for (const auto& a : T.entries()) scale = std::max(scale, a.norm());
  if (component_commutator_defect(T) <= 1e-14 * scale * scale) {
    condition = "commuting components";
    return;
  }
  condition = "horizon " + std::to_string(opt.pa_horizon);
  auto rep = power_assoc_check(T, opt.pa_horizon, opt.pa_tol);
  residual = rep.relative;
  if (!rep.ok) {
    std::ostringstream os;
    os << "operator is not power-associative (relative residual " << rep.relative << " at power "
       << rep.worst_power << ")";
    throw NonPowerAssociativeError(os.str(), rep.relative);
  }
}

struct NodeTerms {
  std::array<OctMatrix, 8> part;  // one per frame component (only [0] used for slice preserving f)
};

// per-component integrals over all nodes (stride 1) and over even nodes (stride 2)
std::pair<std::array<OctMatrix, 8>, std::array<OctMatrix, 8>> integrate(const CalcRequest& req,
                                                                         const SliceFrame& frame) {
  const auto& c = req.contour;
  const std::size_t n = req.T.n();
  const int parts = req.f.preserving ? 1 : 8;
  const RealOpMatrix LT = realize(req.T);
  std::vector<NodeTerms> terms(static_cast<std::size_t>(c.nodes));
  parallel_for(terms.size(), [&](std::size_t k) {
    Octonion s = c.node(static_cast<int>(k)), ds = c.weight(static_cast<int>(k));
    RealOpMatrix A = r_mult(s, n) - LT;
    // left calculus pairs the ext inverse with right scalars, the right calculus the lif inverse with left
    OctMatrix R = reg_inverse(A, req.side == Side::Left ? Side::Right : Side::Left, 1e-12);
    std::array<Octonion, 8> vals{};
    if (req.f.preserving) {
      vals[0] = req.f(s);
    } else {
      vals = slice_components(req.f, frame, s);
    }
    for (int i = 0; i < parts; ++i) {
      terms[k].part[i] = req.side == Side::Left ? scalar_mul(R, ds * vals[i], Side::Right)
                                                : scalar_mul(R, vals[i] * ds, Side::Left);
    }
  });
  std::array<OctMatrix, 8> full, half;
  for (int i = 0; i < 8; ++i) {
    full[i] = OctMatrix(n);
    half[i] = OctMatrix(n);
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    for (int i = 0; i < parts; ++i) {
      full[i] += terms[k].part[i];
      if (k % 2 == 0) half[i] += 2.0 * terms[k].part[i];
    }
  }
  return {full, half};
}

OctMatrix assemble(const std::array<OctMatrix, 8>& acc, const SliceFunction& f, const SliceFrame& frame,
                   Side side) {
  if (f.preserving) return acc[0];
  OctMatrix out(acc[0].n());
  for (int i = 0; i < 8; ++i)
    out += side == Side::Left ? scalar_mul(acc[i], frame[i], Side::Right) : scalar_mul(acc[i], frame[i], Side::Left);
  return out;
}

void validate_request(const CalcRequest& req) {
  req.contour.validate();
  if (req.T.n() == 0) throw DomainError("operator dimension must be positive");
  if (!req.f.eval) throw DomainError("function is not set");
  if (req.f.side != req.side) throw DomainError("function side does not match calculus side");
}

}  // namespace

CalcResult functional_calculus(const CalcRequest& req) {
  validate_request(req);
  CalcResult res;
  check_power_assoc(req.T, req.options, res.pa_residual, res.pa_condition);
  res.op_norm = operator_norm(req.T);
  res.trivially_enclosed = std::abs(req.contour.center) + res.op_norm < req.contour.radius;
  if (req.options.check_enclosure) check_enclosure(req.T, req.contour, req.options);
  SliceFrame frame = make_slice_frame(req.contour.J);
  auto [full, half] = integrate(req, frame);
  res.value = assemble(full, req.f, frame, req.side);
  if (req.contour.nodes % 2 == 0) {
    res.error_estimate = frobenius_distance(res.value, assemble(half, req.f, frame, req.side));
    if (res.error_estimate > req.options.quad_tol) {
      std::ostringstream os;
      os << "quadrature error estimate " << res.error_estimate << " exceeds " << req.options.quad_tol;
      throw ToleranceError(os.str(), res.error_estimate, req.options.quad_tol);
    }
  }
  return res;
}

OctMatrix functional_calculus_associator_form(const CalcRequest& req) {
  validate_request(req);
  double pa = 0.0;
  std::string cond;
  check_power_assoc(req.T, req.options, pa, cond);
  const auto& c = req.contour;
  const std::size_t n = req.T.n();
  const SliceFrame standard = make_slice_frame(Octonion::unit(4));
  const SliceFrame frame = make_slice_frame(c.J);
  std::vector<OctMatrix> terms(static_cast<std::size_t>(c.nodes));
  parallel_for(terms.size(), [&](std::size_t k) {
    Octonion s = c.node(static_cast<int>(k)), ds = c.weight(static_cast<int>(k));
    RealOpMatrix A = rs_minus_t(req.T, s);
    OctMatrix R = reg_inverse(A, req.side == Side::Left ? Side::Right : Side::Left, 1e-12);
    // components along the standard basis, from the frame components
    auto fc = slice_components(req.f, frame, s);
    std::array<Octonion, 8> comp{};
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) comp[j] += fc[i] * frame[i][j];
    OctMatrix t(n);
    if (req.side == Side::Left) {
      t = scalar_mul(R, ds * req.f(s), Side::Right);
      for (int i = 1; i < 8; ++i) {
        Octonion p = ds * comp[i];
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) t(a, b) += associator(R(a, b), p, standard[i]);
      }
    } else {
      t = scalar_mul(R, req.f(s) * ds, Side::Left);
      for (int i = 1; i < 8; ++i) {
        Octonion p = comp[i] * ds;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) t(a, b) -= associator(standard[i], p, R(a, b));
      }
    }
    terms[k] = std::move(t);
  });
  OctMatrix out(n);
  for (const auto& t : terms) out += t;
  return out;
}

double contour_independence_check(const CalcRequest& req, double r1, double r2) {
  CalcRequest a = req, b = req;
  a.contour.radius = r1;
  b.contour.radius = r2;
  return frobenius_distance(functional_calculus(a).value, functional_calculus(b).value);
}

std::vector<Octonion> structured_units(std::size_t extra, std::uint64_t seed) {
  std::vector<Octonion> u;
  for (int i = 1; i < 8; ++i) u.push_back(Octonion::unit(i));
  for (int i = 1; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) u.push_back((Octonion::unit(i) + Octonion::unit(j)) / std::sqrt(2.0));
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < extra; ++k) u.push_back(random_unit_imaginary(rng));
  return u;
}

OperatorField sphere_probe(const OctMatrix& T, const SliceFunction& f, const std::vector<Octonion>& units,
                           Side side, double radius, int nodes, const CalcOptions& opt) {
  if (units.empty()) throw DomainError("sphere probe needs at least one unit");
  OperatorField field;
  field.units = units;
  auto run = [&](const Octonion& J) {
    CalcRequest req{T, f, SliceContour{J, 0.0, radius, nodes}, side, opt};
    return functional_calculus(req).value;
  };
  for (const auto& J : units) field.values.push_back(run(J));
  const OctMatrix re0 = re_op(field.values[0]);
  for (std::size_t k = 1; k < units.size(); ++k) {
    field.max_dev = std::max(field.max_dev, frobenius_distance(field.values[k], field.values[0]));
    field.max_re_dev = std::max(field.max_re_dev, frobenius_distance(re_op(field.values[k]), re0));
  }
  Octonion J0 = units[0];
  Octonion K = make_slice_frame(J0)[1];
  Octonion J1 = J0 + 1e-4 * K;
  field.continuity_dev = frobenius_distance(run(J1 / J1.norm()), field.values[0]);
  return field;
}

ProductReport product_property_check(const OctMatrix& T, const SlicePolynomial& f, const SlicePolynomial& g,
                                     const Octonion& J, double radius, int nodes, const CalcOptions& opt) {
  if (f.side != Side::Right || g.side != Side::Left)
    throw DomainError("product property needs f right and g left slice regular");
  for (const auto* p : {&f, &g})
    for (const auto& a : p->coeffs)
      if (distance(pi_project(a, J), a) > 1e-12 * std::max(1.0, a.norm()))
        throw DomainError("coefficients must lie in C_J");
  SliceContour c{J, 0.0, radius, nodes};
  auto calc = [&](const SlicePolynomial& p) {
    CalcRequest req{T, SliceFunction::from(p), c, p.side, opt};
    return functional_calculus(req).value;
  };
  OctMatrix A = calc(f), B = calc(g);
  OctMatrix lhs = re_op(reg_compose(A, B));
  OctMatrix mid = re_op(calc(slice_product(f, flip_side(g))));
  OctMatrix rhs = re_op(calc(slice_product(flip_side(f), g)));
  ProductReport rep;
  rep.deviation = std::max({frobenius_distance(lhs, mid), frobenius_distance(lhs, rhs), frobenius_distance(mid, rhs)});
  rep.tilde_deviation = frobenius_distance(re_op(A), re_op(calc(flip_side(f))));
  return rep;
}

}  // namespace octofc
