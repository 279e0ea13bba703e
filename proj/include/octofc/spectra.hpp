#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "octofc/paralin.hpp"

namespace octofc {

enum class SpectrumKind { Pullback, Pushforward };
enum class PaKind { Extendable, Liftable };

struct SpectraOptions {
  int horizon = 16;          // powers tested for slice power-associativity
  double pa_tol = 1e-8;      // relative to ||M||^n
  double singular_rel = 1e-8;  // invertible iff min_sv > singular_rel (1 + |s| + ||T||)
};

RealOpMatrix rs_minus_t(const OctMatrix& T, const Octonion& s);

// det(R_s - L_q) on O = R^8, closed form and numerically
double det_rs_minus_lq(const Octonion& q, const Octonion& s);
double det_numeric(const RealOpMatrix& M);

struct SlicePaResult {
  bool ok = true;
  double defect = 0.0;  // worst relative defect
  int worst_power = 0;
};
// extendable: M^n(vJ) = M^n(v) J for real v; liftable: Re M^n(vJ) = Re(M^n(v) J) for all v
SlicePaResult slice_pa_test(const RealOpMatrix& M, const Octonion& J, PaKind kind, int horizon,
                            double tol);

struct ResolventSample {
  Octonion s;
  double min_sv = 0.0;
  bool invertible = false;
  bool extendable = false;
  bool liftable = false;
  bool in_pullback = false;     // s in the pull-back resolvent set
  bool in_pushforward = false;  // s in the push-forward resolvent set
};

ResolventSample membership(const OctMatrix& T, const Octonion& s, const Octonion& J,
                           const SpectraOptions& opt = {});
double singular_threshold(const OctMatrix& T, const Octonion& s, const SpectraOptions& opt);

struct GridSpec {
  double xmin = -3.0, xmax = 3.0, ymin = 0.0, ymax = 3.0;
  int nx = 200, ny = 200;
  double dx() const { return nx > 1 ? (xmax - xmin) / (nx - 1) : 0.0; }
  double dy() const { return ny > 1 ? (ymax - ymin) / (ny - 1) : 0.0; }
  double x(int i) const { return xmin + i * dx(); }
  double y(int j) const { return ymin + j * dy(); }
};

struct SpectralPoint {
  double x = 0.0, y = 0.0;
  double min_sv = 0.0;
  std::size_t cells = 0;  // grid points in the cluster
};

struct ScanGrid {
  Octonion J;
  GridSpec grid;
  SpectrumKind kind = SpectrumKind::Pullback;
  std::vector<ResolventSample> samples;  // index j * nx + i
  std::vector<SpectralPoint> points;     // one representative per flagged cluster
  double cell = 0.0;                     // grid cell diagonal
  const ResolventSample& at(int i, int j) const { return samples[static_cast<std::size_t>(j) * grid.nx + i]; }
};

ScanGrid scan_slice(const OctMatrix& T, const Octonion& J, const GridSpec& grid, SpectrumKind kind,
                    const SpectraOptions& opt = {});
// re-cluster existing samples for the other spectrum, no new solves
ScanGrid relocate(ScanGrid grid, SpectrumKind kind);

// every expected point has a found point within radius and vice versa
bool points_match(const std::vector<SpectralPoint>& found,
                  const std::vector<std::pair<double, double>>& expected, double radius);

// partial resolvent series: right sum_n T^(n) . s^{-1-n}, left sum_n s^{-1-n} . T^(n)
OctMatrix resolvent_series(const OctMatrix& T, const Octonion& s, Side side, int N);
double series_tail_bound(const OctMatrix& T, const Octonion& s, int N);

struct SeriesResidual {
  double alpha_residual = 0.0;  // || (R_s - T) S_N(x) - x - alpha_N(x) ||
  double beta_residual = 0.0;   // || pi_J S'_N (R_s - T) x - pi_J x - beta_N(x) ||
  double alpha_bound = 0.0;     // bounds on the truncation remainders
  double beta_bound = 0.0;
  double alpha_norm = 0.0;      // size of the associator sums
  double beta_norm = 0.0;
};
// x_slice must lie in C_J(V), s in C_J with |s| > ||T||
SeriesResidual series_residual_general(const OctMatrix& T, const Octonion& s, const Octonion& J,
                                       const OctVector& x_slice, const OctVector& x_any, int N);

// binomial coefficients C(m+n-1, m-1), exact when representable
struct BinomialTable {
  int max_m = 0, max_n = 0;
  std::vector<std::vector<unsigned long long>> exact;  // 0 marks overflow
  std::vector<std::vector<double>> value;
  double operator()(int m, int n) const { return value[m][n]; }
};
BinomialTable amn_table(int max_m, int max_n);
unsigned long long amn(int m, int n);  // throws on overflow

// sum_n a_{m,n} T^n R_{s^{-1}}^{m+n}, compared against (R_s - T)^{-m} on C_J(V)
Eigen::MatrixXd resolvent_power_series(const OctMatrix& T, const Octonion& s, int m, int N);
double resolvent_power_defect(const OctMatrix& T, const Octonion& s, const Octonion& J, int m, int N);

struct RegularityOptions {
  double h = 1e-2;
  SpectraOptions spectra{};
};
struct RegularityResult {
  double residual_h = 0.0;
  double residual_h2 = 0.0;  // at h / 2
  double order = 0.0;        // log2(residual_h / residual_h2)
};
// central-difference Cauchy-Riemann residual of g(s) = phi((R_s-T)^{-1} v) (pull-back, right regular)
// or g(s) = phi(pi_J (R_s-T)^{-lif}(v)) (push-forward, holomorphic)
double regularity_residual(const OctMatrix& T, const Octonion& J, double x, double y,
                           const RealFunctional& phi, const RealVector& v, SpectrumKind kind,
                           double h, const SpectraOptions& opt = {});
RegularityResult regularity_order(const OctMatrix& T, const Octonion& J, double x, double y,
                                  const RealFunctional& phi, const RealVector& v, SpectrumKind kind,
                                  const RegularityOptions& opt = {});

}  // namespace octofc
