#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "octofc/paralin.hpp"
#include "octofc/slicefun.hpp"
#include "octofc/spectra.hpp"

namespace octofc {

struct CalcOptions {
  double quad_tol = 1e-6;     // max Frobenius gap between the M and M/2 rules
  int pa_horizon = 16;
  double pa_tol = 1e-9;
  bool allow_non_pa = false;  // skip the power-associativity precondition
  bool check_enclosure = true;
  int enclosure_res = 41;     // coarse scan resolution when the contour is not trivially admissible
  SpectraOptions spectra{};
};

struct CalcRequest {
  OctMatrix T;
  SliceFunction f;
  SliceContour contour;  // contour.J is the slice
  Side side = Side::Left;
  CalcOptions options{};
};

struct CalcResult {
  OctMatrix value;
  double error_estimate = 0.0;
  double pa_residual = 0.0;
  std::string pa_condition;  // which power-associativity test applied
  double op_norm = 0.0;
  bool trivially_enclosed = false;  // |center| + ||T|| < radius
};

// circle at 0 with radius 1.1 (||T|| + 0.1)
SliceContour default_contour(const OctMatrix& T, const Octonion& J, int nodes = 1024);

CalcResult functional_calculus(const CalcRequest& req);
// direct quadrature of the integrand with the associator correction terms
OctMatrix functional_calculus_associator_form(const CalcRequest& req);
// throws PreconditionError unless every spectral point in C_J lies inside the contour
void check_enclosure(const OctMatrix& T, const SliceContour& c, const CalcOptions& opt);

double contour_independence_check(const CalcRequest& req, double r1, double r2);

// seven standard units, 21 normalized pair sums, then `extra` random units
std::vector<Octonion> structured_units(std::size_t extra = 0, std::uint64_t seed = 0);

struct OperatorField {
  std::vector<Octonion> units;
  std::vector<OctMatrix> values;
  double max_dev = 0.0;        // spread of the full operators
  double max_re_dev = 0.0;     // spread of the real parts
  double continuity_dev = 0.0; // change under a 1e-4 perturbation of the first unit
};
OperatorField sphere_probe(const OctMatrix& T, const SliceFunction& f, const std::vector<Octonion>& units,
                           Side side, double radius, int nodes, const CalcOptions& opt = {});

struct ProductReport {
  double deviation = 0.0;        // among the three real parts of the product identity
  double tilde_deviation = 0.0;  // Re f_*(T) vs Re (flipped f)^*(T)
};
// f right, g left, coefficients in C_J
ProductReport product_property_check(const OctMatrix& T, const SlicePolynomial& f, const SlicePolynomial& g,
                                     const Octonion& J, double radius, int nodes, const CalcOptions& opt = {});

}  // namespace octofc
