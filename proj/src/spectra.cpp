#include "octofc/spectra.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

#include "octofc/errors.hpp"
#include "octofc/parallel.hpp"

namespace octofc {

RealOpMatrix rs_minus_t(const OctMatrix& T, const Octonion& s) { return r_mult(s, T.n()) - realize(T); }

double det_rs_minus_lq(const Octonion& q, const Octonion& s) {
  double d = q.re() - s.re();
  double iq = q.im().norm(), is = s.im().norm();
  double a = (q - s.conj()).norm2();
  return a * a * (d * d + (iq + is) * (iq + is)) * (d * d + (iq - is) * (iq - is));
}

double det_numeric(const RealOpMatrix& M) { return M.m.partialPivLu().determinant(); }

SlicePaResult slice_pa_test(const RealOpMatrix& M, const Octonion& J, PaKind kind, int horizon,
                            double tol) {
  SlicePaResult res;
  const std::size_t n = M.n();
  const double mnorm = std::max(operator_norm(M), 1e-300);
  std::vector<OctVector> starts;
  if (kind == PaKind::Extendable) {
    for (std::size_t j = 0; j < n; ++j) starts.push_back(OctVector::delta(n, j));
  } else {
    for (std::size_t k = 0; k < 8 * n; ++k) starts.push_back(OctVector::coord_basis(n, k));
  }
  for (const auto& v : starts) {
    Eigen::VectorXd a = to_coords(mul_right(v, J));
    Eigen::VectorXd b = to_coords(v);
    double scale = 1.0;
    for (int k = 1; k <= horizon; ++k) {
      a = M.m * a;
      b = M.m * b;
      scale *= mnorm;
      OctVector lhs = from_coords(a), rhs = mul_right(from_coords(b), J);
      double d;
      if (kind == PaKind::Extendable) {
        d = distance(lhs, rhs);
      } else {
        d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += std::pow(lhs[i].re() - rhs[i].re(), 2);
        d = std::sqrt(d);
      }
      d /= scale;
      if (d > res.defect) {
        res.defect = d;
        res.worst_power = k;
      }
    }
  }
  res.ok = res.defect <= tol;
  return res;
}

double singular_threshold(const OctMatrix& T, const Octonion& s, const SpectraOptions& opt) {
  return opt.singular_rel * (1.0 + s.norm() + operator_norm(T));
}

namespace {

ResolventSample classify(const RealOpMatrix& A, const Octonion& s, const Octonion& J, double tau,
                         const SpectraOptions& opt) {
  ResolventSample r;
  r.s = s;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A.m);
  const auto& sv = svd.singularValues();
  r.min_sv = sv(sv.size() - 1);
  r.invertible = r.min_sv > tau;
  if (r.invertible) {
    RealOpMatrix inv{A.m.partialPivLu().inverse()};
    r.extendable = slice_pa_test(inv, J, PaKind::Extendable, opt.horizon, opt.pa_tol).ok;
    r.liftable = slice_pa_test(inv, J, PaKind::Liftable, opt.horizon, opt.pa_tol).ok;
  }
  r.in_pullback = r.invertible && r.extendable;
  r.in_pushforward = r.invertible && r.liftable;
  return r;
}

void locate(ScanGrid& out) {
  const GridSpec& grid = out.grid;
  const std::size_t total = out.samples.size();
  out.points.clear();
  // min_sv is 1-Lipschitz in s, so every spectral point has a grid neighbour
  // with min_sv below the cell diagonal
  std::vector<char> flagged(total, 0);
  for (std::size_t k = 0; k < total; ++k) {
    const auto& r = out.samples[k];
    bool in_res = out.kind == SpectrumKind::Pullback ? r.in_pullback : r.in_pushforward;
    flagged[k] = !in_res || r.min_sv <= out.cell;
  }
  std::vector<int> label(total, -1);
  for (std::size_t k = 0; k < total; ++k) {
    if (!flagged[k] || label[k] >= 0) continue;
    int id = static_cast<int>(out.points.size());
    SpectralPoint best;
    best.min_sv = INFINITY;
    std::vector<std::size_t> stack{k};
    label[k] = id;
    while (!stack.empty()) {
      std::size_t c = stack.back();
      stack.pop_back();
      ++best.cells;
      const auto& r = out.samples[c];
      int ci = static_cast<int>(c % grid.nx), cj = static_cast<int>(c / grid.nx);
      if (r.min_sv < best.min_sv) {
        best.min_sv = r.min_sv;
        best.x = grid.x(ci);
        best.y = grid.y(cj);
      }
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          int ni = ci + di, nj = cj + dj;
          if (ni < 0 || nj < 0 || ni >= grid.nx || nj >= grid.ny) continue;
          std::size_t nk = static_cast<std::size_t>(nj) * grid.nx + ni;
          if (flagged[nk] && label[nk] < 0) {
            label[nk] = id;
            stack.push_back(nk);
          }
        }
      }
    }
    out.points.push_back(best);
  }
}

}  // namespace

ResolventSample membership(const OctMatrix& T, const Octonion& s, const Octonion& J,
                           const SpectraOptions& opt) {
  return classify(rs_minus_t(T, s), s, J, singular_threshold(T, s, opt), opt);
}

ScanGrid scan_slice(const OctMatrix& T, const Octonion& J, const GridSpec& grid, SpectrumKind kind,
                    const SpectraOptions& opt) {
  if (!is_unit_imaginary(J, 1e-10)) throw DomainError("J must be a unit imaginary octonion");
  if (grid.nx < 2 || grid.ny < 2 || !(grid.xmax > grid.xmin) || !(grid.ymax > grid.ymin))
    throw DomainError("grid needs at least 2 points per axis and increasing bounds");
  ScanGrid out;
  out.J = J;
  out.grid = grid;
  out.kind = kind;
  out.cell = std::hypot(grid.dx(), grid.dy());
  const std::size_t total = static_cast<std::size_t>(grid.nx) * grid.ny;
  out.samples.resize(total);
  const RealOpMatrix LT = realize(T);
  const double tnorm = operator_norm(LT);
  parallel_for(total, [&](std::size_t k) {
    int i = static_cast<int>(k % grid.nx), j = static_cast<int>(k / grid.nx);
    Octonion s = slice_point(grid.x(i), grid.y(j), J);
    double tau = opt.singular_rel * (1.0 + s.norm() + tnorm);
    out.samples[k] = classify(r_mult(s, T.n()) - LT, s, J, tau, opt);
  });

  locate(out);
  return out;
}

ScanGrid relocate(ScanGrid grid, SpectrumKind kind) {
  grid.kind = kind;
  locate(grid);
  return grid;
}

bool points_match(const std::vector<SpectralPoint>& found,
                  const std::vector<std::pair<double, double>>& expected, double radius) {
  for (const auto& e : expected) {
    bool hit = std::any_of(found.begin(), found.end(), [&](const SpectralPoint& p) {
      return std::hypot(p.x - e.first, p.y - e.second) <= radius;
    });
    if (!hit) return false;
  }
  for (const auto& p : found) {
    bool hit = std::any_of(expected.begin(), expected.end(), [&](const auto& e) {
      return std::hypot(p.x - e.first, p.y - e.second) <= radius;
    });
    if (!hit) return false;
  }
  return true;
}

namespace {

void require_outside_norm(const OctMatrix& T, const Octonion& s, double tnorm) {
  if (!(s.norm() > tnorm)) {
    std::ostringstream os;
    os << "series needs |s| > ||T|| (|s| = " << s.norm() << ", ||T|| = " << tnorm << ")";
    throw PreconditionError(os.str());
  }
  (void)T;
}

}  // namespace

OctMatrix resolvent_series(const OctMatrix& T, const Octonion& s, Side side, int N) {
  if (s.norm2() == 0.0) throw DomainError("resolvent series needs s != 0");
  if (N < 0) throw DomainError("N must be non-negative");
  // for |s| <= ||T|| the truncation is returned as is; callers check series_tail_bound
  RealOpMatrix P = realize(T);
  const Octonion sinv = s.inv();
  Eigen::MatrixXd Pn = Eigen::MatrixXd::Identity(P.m.rows(), P.m.cols());
  Octonion coef = sinv;  // s^{-1-n}
  OctMatrix sum(T.n());
  for (int n = 0; n <= N; ++n) {
    RealOpMatrix Q{Pn};
    sum += side == Side::Right ? scalar_mul(ext_map(Q), coef, Side::Right)
                               : scalar_mul(lif_map(Q), coef, Side::Left);
    Pn = P.m * Pn;
    coef = coef * sinv;
  }
  return sum;
}

double series_tail_bound(const OctMatrix& T, const Octonion& s, int N) {
  double t = operator_norm(T), a = s.norm();
  if (!(a > t)) return INFINITY;
  return std::pow(t / a, N + 1) / (a - t);
}

SeriesResidual series_residual_general(const OctMatrix& T, const Octonion& s, const Octonion& J,
                                       const OctVector& x_slice, const OctVector& x_any, int N) {
  RealOpMatrix P = realize(T);
  const double tnorm = operator_norm(P);
  require_outside_norm(T, s, tnorm);
  if (distance(pi_project(s, J), s) > 1e-12 * std::max(1.0, s.norm()))
    throw DomainError("s must lie in the slice C_J");
  if (!in_slice(x_slice, J, 1e-12)) throw DomainError("x must lie in C_J(V)");
  if (x_slice.size() != T.n() || x_any.size() != T.n()) throw DomainError("vector size mismatch");

  const std::size_t n = T.n();
  const Octonion sinv = s.inv();
  SeriesResidual out;

  // right series on C_J(V)
  OctVector S(n), alpha(n);
  OctMatrix An = OctMatrix::identity(n);
  Octonion coef = sinv;
  for (int k = 0; k <= N; ++k) {
    S += scalar_mul(An, coef, Side::Right).apply(x_slice);
    OctVector y = mul_right(x_slice, coef);
    OctMatrix Anext = reg_compose(T, An);
    alpha += Anext.apply(y) - T.apply(An.apply(y));
    An = std::move(Anext);
    coef = coef * sinv;
  }
  OctVector lhs = mul_right(S, s) - T.apply(S);
  out.alpha_residual = distance(lhs - x_slice, alpha);
  out.alpha_norm = alpha.norm();

  // left series, projected to C_J(V)
  OctVector y = mul_right(x_any, s) - T.apply(x_any);
  OctVector Tx = T.apply(x_any);
  OctVector L(n), beta(n);
  OctMatrix Bn = OctMatrix::identity(n);
  coef = sinv;
  for (int k = 0; k <= N; ++k) {
    L += scalar_mul(Bn, coef, Side::Left).apply(y);
    OctMatrix Bnext = reg_compose(Bn, T);
    beta += mul_right(Bnext.apply(x_any) - Bn.apply(Tx), coef);
    Bn = std::move(Bnext);
    coef = coef * sinv;
  }
  beta = pi_project(beta, J);
  out.beta_residual = distance(pi_project(L, J) - pi_project(x_any, J), beta);
  out.beta_norm = beta.norm();

  double r = std::pow(tnorm / s.norm(), N + 1);
  out.alpha_bound = 2.0 * x_slice.norm() * r;
  out.beta_bound = 8.0 * x_any.norm() * r;
  return out;
}

BinomialTable amn_table(int max_m, int max_n) {
  if (max_m < 1 || max_n < 0) throw DomainError("amn needs m >= 1, n >= 0");
  BinomialTable t;
  t.max_m = max_m;
  t.max_n = max_n;
  t.exact.assign(max_m + 1, std::vector<unsigned long long>(max_n + 1, 0));
  t.value.assign(max_m + 1, std::vector<double>(max_n + 1, 0.0));
  for (int n = 0; n <= max_n; ++n) {
    t.exact[1][n] = 1;
    t.value[1][n] = 1.0;
  }
  for (int m = 2; m <= max_m; ++m) {
    t.exact[m][0] = 1;
    t.value[m][0] = 1.0;
    for (int n = 1; n <= max_n; ++n) {
      unsigned long long a = t.exact[m][n - 1], b = t.exact[m - 1][n], c = 0;
      bool ok = a != 0 && b != 0 && !__builtin_add_overflow(a, b, &c);
      t.exact[m][n] = ok ? c : 0;
      // past uint64 the entries carry double rounding
      t.value[m][n] = ok ? static_cast<double>(c) : t.value[m][n - 1] + t.value[m - 1][n];
    }
  }
  return t;
}

unsigned long long amn(int m, int n) {
  auto t = amn_table(m, n);
  if (t.exact[m][n] == 0) throw DomainError("binomial coefficient overflows 64 bits");
  return t.exact[m][n];
}

Eigen::MatrixXd resolvent_power_series(const OctMatrix& T, const Octonion& s, int m, int N) {
  if (m < 1) throw DomainError("m must be >= 1");
  RealOpMatrix P = realize(T);
  require_outside_norm(T, s, operator_norm(P));
  auto table = amn_table(m, N);
  Eigen::MatrixXd Rinv = r_mult(s.inv(), T.n()).m;
  Eigen::MatrixXd Rm = Eigen::MatrixXd::Identity(P.m.rows(), P.m.cols());
  for (int k = 0; k < m; ++k) Rm = Rinv * Rm;
  // term_n = T^n R^{-m-n}: build R^{-m-n} and T^n separately
  Eigen::MatrixXd Tn = Eigen::MatrixXd::Identity(P.m.rows(), P.m.cols());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(P.m.rows(), P.m.cols());
  for (int n = 0; n <= N; ++n) {
    sum += table(m, n) * (Tn * Rm);
    Tn = P.m * Tn;
    Rm = Rinv * Rm;
  }
  return sum;
}

double resolvent_power_defect(const OctMatrix& T, const Octonion& s, const Octonion& J, int m, int N) {
  Eigen::MatrixXd S = resolvent_power_series(T, s, m, N);
  RealOpMatrix A = rs_minus_t(T, s);
  Eigen::MatrixXd inv = A.m.partialPivLu().inverse();
  Eigen::MatrixXd Im = Eigen::MatrixXd::Identity(inv.rows(), inv.cols());
  for (int k = 0; k < m; ++k) Im = inv * Im;
  double worst = 0.0;
  for (std::size_t j = 0; j < T.n(); ++j) {
    OctVector d = OctVector::delta(T.n(), j);
    for (const auto& z : {d, mul_right(d, J)}) {
      Eigen::VectorXd v = to_coords(z);
      worst = std::max(worst, (S * v - Im * v).norm());
    }
  }
  return worst;
}

namespace {

Octonion resolvent_functional(const OctMatrix& T, const Octonion& s, const Octonion& J,
                              const RealFunctional& phi, const RealVector& v, SpectrumKind kind,
                              const SpectraOptions& opt) {
  ResolventSample r = membership(T, s, J, opt);
  bool in_res = kind == SpectrumKind::Pullback ? r.in_pullback : r.in_pushforward;
  if (!in_res) {
    std::ostringstream os;
    os << "stencil point " << s << " is not in the resolvent set";
    throw SingularityError(os.str(), r.min_sv);
  }
  RealOpMatrix A = rs_minus_t(T, s);
  OctVector ve = v.embed();
  if (kind == SpectrumKind::Pullback) return phi(reg_inverse(A, Side::Right, 0.0).apply(ve));
  return phi(pi_project(reg_inverse(A, Side::Left, 0.0).apply(ve), J));
}

}  // namespace

double regularity_residual(const OctMatrix& T, const Octonion& J, double x, double y,
                           const RealFunctional& phi, const RealVector& v, SpectrumKind kind,
                           double h, const SpectraOptions& opt) {
  if (!(h > 0.0)) throw DomainError("step must be positive");
  auto g = [&](double a, double b) {
    return resolvent_functional(T, slice_point(a, b, J), J, phi, v, kind, opt);
  };
  // center and a ring of radius 2h must be resolvent points too
  g(x, y);
  for (int k = 0; k < 8; ++k) {
    double t = k * M_PI / 4.0;
    g(x + 2 * h * std::cos(t), y + 2 * h * std::sin(t));
  }
  Octonion gx = (g(x + h, y) - g(x - h, y)) / (2 * h);
  Octonion gy = (g(x, y + h) - g(x, y - h)) / (2 * h);
  Octonion res = kind == SpectrumKind::Pullback ? gx + gy * J : gx + J * gy;
  return res.norm();
}

RegularityResult regularity_order(const OctMatrix& T, const Octonion& J, double x, double y,
                                  const RealFunctional& phi, const RealVector& v, SpectrumKind kind,
                                  const RegularityOptions& opt) {
  RegularityResult r;
  r.residual_h = regularity_residual(T, J, x, y, phi, v, kind, opt.h, opt.spectra);
  r.residual_h2 = regularity_residual(T, J, x, y, phi, v, kind, opt.h / 2, opt.spectra);
  r.order = std::log2(r.residual_h / r.residual_h2);
  return r;
}

}  // namespace octofc
