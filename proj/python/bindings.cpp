#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "octofc/cli.hpp"
#include "octofc/errors.hpp"
#include "octofc/funcalc.hpp"

namespace py = pybind11;
using namespace octofc;

namespace {

Octonion to_oct(const std::vector<double>& v) {
  if (v.size() > 8) throw DomainError("an octonion has at most 8 coordinates");
  Octonion x;
  for (std::size_t i = 0; i < v.size(); ++i) x.c[i] = v[i];
  return x;
}

std::vector<double> from_oct(const Octonion& x) { return {x.c.begin(), x.c.end()}; }

// numpy (n, n, 8) <-> OctMatrix
OctMatrix to_matrix(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 3 || a.shape(0) != a.shape(1) || a.shape(2) != 8)
    throw DomainError("operator array must have shape (n, n, 8)");
  auto r = a.unchecked<3>();
  const auto n = static_cast<std::size_t>(a.shape(0));
  OctMatrix T(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int k = 0; k < 8; ++k) T(i, j).c[k] = r(i, j, k);
  return T;
}

py::array_t<double> from_matrix(const OctMatrix& T) {
  const auto n = static_cast<py::ssize_t>(T.n());
  py::array_t<double> a({n, n, py::ssize_t{8}});
  auto w = a.mutable_unchecked<3>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j)
      for (int k = 0; k < 8; ++k) w(i, j, k) = T(i, j).c[k];
  return a;
}

SlicePolynomial to_poly(const py::object& f, Side side) {
  if (py::isinstance<py::str>(f)) return parse_function_spec(f.cast<std::string>(), side);
  SlicePolynomial p{side, {}};
  for (const auto& c : f) p.coeffs.push_back(to_oct(c.cast<std::vector<double>>()));
  return p;
}

Side side_of(const std::string& s) { return parse_side(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Octonionic slice functional calculus";
  m.attr("__version__") = OCTOFC_VERSION;

  static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_RuntimeError);
  static py::exception<ToleranceError> tolerance(m, "ToleranceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionError& e) {
      py::set_error(precondition, e.what());
    } catch (const ToleranceError& e) {
      py::set_error(tolerance, e.what());
    } catch (const ConfigError& e) {
      py::set_error(PyExc_ValueError, (std::string(e.what()) + " at " + e.location()).c_str());
    }
  });

  m.def("multiply", [](const std::vector<double>& a, const std::vector<double>& b) {
    return from_oct(to_oct(a) * to_oct(b));
  });
  m.def("associator", [](const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
    return from_oct(associator(to_oct(a), to_oct(b), to_oct(c)));
  });
  m.def("conj", [](const std::vector<double>& a) { return from_oct(to_oct(a).conj()); });
  m.def("inverse", [](const std::vector<double>& a) { return from_oct(to_oct(a).inv()); });

  m.def(
      "identity_residuals",
      [](int samples, std::uint64_t seed) {
        IdentityReport r = identity_residuals(samples, seed);
        return py::dict(py::arg("moufang_left") = r.moufang_left, py::arg("moufang_right") = r.moufang_right,
                        py::arg("moufang_middle") = r.moufang_middle, py::arg("five_term") = r.five_term,
                        py::arg("artin") = r.artin, py::arg("max_scaled") = r.max_scaled,
                        py::arg("table_defects") = r.table_defects);
      },
      py::arg("samples") = 1000, py::arg("seed") = 1);

  m.def("slice_frame", [](const std::vector<double>& J) {
    SliceFrame f = make_slice_frame(to_oct(J));
    std::vector<std::vector<double>> out;
    for (const auto& u : f.units) out.push_back(from_oct(u));
    return out;
  });

  m.def("operator_norm", [](py::array_t<double> T) { return operator_norm(to_matrix(T)); });
  m.def("matrix_power", [](py::array_t<double> T, int k) { return from_matrix(matrix_power(to_matrix(T), k)); });
  m.def(
      "is_power_associative",
      [](py::array_t<double> T, int horizon, double tol) { return power_assoc_check(to_matrix(T), horizon, tol).ok; },
      py::arg("T"), py::arg("horizon") = 16, py::arg("tol") = 1e-9);
  m.def(
      "reg_inverse",
      [](py::array_t<double> T, const std::vector<double>& s, const std::string& side) {
        return from_matrix(reg_inverse(rs_minus_t(to_matrix(T), to_oct(s)), side_of(side)));
      },
      py::arg("T"), py::arg("s"), py::arg("side") = "right", "regular inverse of R_s - T");
  m.def(
      "resolvent_series",
      [](py::array_t<double> T, const std::vector<double>& s, const std::string& side, int N) {
        return from_matrix(resolvent_series(to_matrix(T), to_oct(s), side_of(side), N));
      },
      py::arg("T"), py::arg("s"), py::arg("side") = "right", py::arg("N") = 60);
  m.def("det_rs_minus_lq", [](const std::vector<double>& q, const std::vector<double>& s) {
    return det_rs_minus_lq(to_oct(q), to_oct(s));
  });

  m.def(
      "membership",
      [](py::array_t<double> T, const std::vector<double>& s, const std::vector<double>& J) {
        ResolventSample r = membership(to_matrix(T), to_oct(s), to_oct(J));
        return py::dict(py::arg("min_sv") = r.min_sv, py::arg("invertible") = r.invertible,
                        py::arg("extendable") = r.extendable, py::arg("liftable") = r.liftable,
                        py::arg("in_pullback") = r.in_pullback, py::arg("in_pushforward") = r.in_pushforward);
      });

  m.def(
      "scan_slice",
      [](py::array_t<double> T, const std::vector<double>& J, std::pair<double, double> xr,
         std::pair<double, double> yr, int res, const std::string& kind) {
        GridSpec g{xr.first, xr.second, yr.first, yr.second, res, res};
        ScanGrid s;
        {
          py::gil_scoped_release nogil;
          s = scan_slice(to_matrix(T), to_oct(J), g, parse_kind(kind));
        }
        py::array_t<double> sv({res, res});
        py::array_t<bool> inres({res, res});
        auto a = sv.mutable_unchecked<2>();
        auto b = inres.mutable_unchecked<2>();
        for (int j = 0; j < res; ++j) {
          for (int i = 0; i < res; ++i) {
            a(j, i) = s.at(i, j).min_sv;
            b(j, i) = s.kind == SpectrumKind::Pullback ? s.at(i, j).in_pullback : s.at(i, j).in_pushforward;
          }
        }
        std::vector<std::tuple<double, double, double, std::size_t>> pts;
        for (const auto& p : s.points) pts.emplace_back(p.x, p.y, p.min_sv, p.cells);
        return py::dict(py::arg("min_sv") = sv, py::arg("in_resolvent") = inres, py::arg("points") = pts,
                        py::arg("cell") = s.cell);
      },
      py::arg("T"), py::arg("J"), py::arg("x") = std::make_pair(-3.0, 3.0), py::arg("y") = std::make_pair(0.0, 3.0),
      py::arg("res") = 200, py::arg("kind") = "pullback");

  m.def(
      "functional_calculus",
      [](py::array_t<double> T, const py::object& f, const std::vector<double>& J, const std::string& side,
         double radius, int nodes, double center, bool allow_non_pa) {
        Side sd = side_of(side);
        OctMatrix op = to_matrix(T);
        SliceContour c = default_contour(op, to_oct(J), nodes);
        if (radius > 0.0) c.radius = radius;
        c.center = center;
        CalcRequest req{op, SliceFunction::from(to_poly(f, sd)), c, sd, {}};
        req.options.allow_non_pa = allow_non_pa;
        CalcResult r;
        {
          py::gil_scoped_release nogil;
          r = functional_calculus(req);
        }
        return py::make_tuple(from_matrix(r.value), r.error_estimate);
      },
      py::arg("T"), py::arg("f"), py::arg("J") = std::vector<double>{0, 0, 0, 0, 1, 0, 0, 0}, py::arg("side") = "left",
      py::arg("radius") = 0.0, py::arg("nodes") = 1024, py::arg("center") = 0.0, py::arg("allow_non_pa") = false,
      "f is 'pow:m', 'exp:N' or a list of coefficients; returns (value, error_estimate)");

  m.def("run_examples", [] {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& e : run_examples()) out.emplace_back(e.name, e.pass, e.detail);
    return out;
  });
}
