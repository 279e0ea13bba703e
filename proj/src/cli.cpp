#include "octofc/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "octofc/errors.hpp"

namespace octofc {

namespace fs = std::filesystem;

namespace {

const char* kVersion = OCTOFC_VERSION;

json error_json(const std::string& kind, const std::string& message, const std::string& location = {}) {
  json e{{"kind", kind}, {"message", message}};
  if (!location.empty()) e["location"] = location;
  return json{{"error", e}, {"tool", "octofc"}, {"version", kVersion}};
}

// writes to the configured file, or to `out`
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw ConfigError("cannot write output file", cfg.out_path);
  f << text;
}

std::string resolve(const std::string& path, const fs::path& base) {
  fs::path p(path);
  return p.is_absolute() || base.empty() ? path : (base / p).string();
}

OctMatrix operator_from_request(const json& j, const fs::path& base, const std::string& where) {
  if (j.is_string()) return load_operator(resolve(j.get<std::string>(), base));
  return operator_from_json(j, where);
}

double number_field(const json& j, const char* key, double dflt, const std::string& where) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) throw ConfigError("expected a number", where + "." + key);
  return j[key].get<double>();
}

int int_field(const json& j, const char* key, int dflt, const std::string& where) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number_integer()) throw ConfigError("expected an integer", where + "." + key);
  return j[key].get<int>();
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("must be positive", what);
}

void validate_unit(const Octonion& J, const std::string& where) {
  if (!is_unit_imaginary(J, 1e-9)) throw ConfigError("J must be a unit imaginary octonion", where);
}

json grid_json(const GridSpec& g) {
  return json{{"xmin", g.xmin}, {"xmax", g.xmax}, {"ymin", g.ymin}, {"ymax", g.ymax}, {"nx", g.nx}, {"ny", g.ny}};
}

int cmd_algebra_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1", "samples");
  const double id_tol = 1e-12, re_tol = 1e-13;
  IdentityReport rep = identity_residuals(cfg.samples, cfg.seed);

  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  const int vectors = std::max(1, cfg.samples / 10);
  double re_std = 0.0, re_frames = 0.0, frame_defect = 0.0;
  std::vector<SliceFrame> frames;
  for (int k = 0; k < 10; ++k) frames.push_back(make_slice_frame(random_unit_imaginary(rng)));
  for (const auto& f : frames) frame_defect = std::max(frame_defect, frame_table_defect(f));
  for (int k = 0; k < vectors; ++k) {
    OctVector x = random_oct_vector(3, rng);
    double scale = std::max(1.0, x.norm());
    re_std = std::max(re_std, distance(re_part_formula(x), re_embed(x)) / scale);
    for (const auto& f : frames) re_frames = std::max(re_frames, distance(re_part_formula(x, f), re_embed(x)) / scale);
  }
  bool pass = rep.max_scaled <= id_tol && rep.table_defects == 0 && re_std <= re_tol && re_frames <= re_tol &&
              frame_defect <= 1e-12;
  json config{{"command", "algebra-verify"}, {"samples", cfg.samples}, {"seed", cfg.seed}};
  json doc{{"meta", run_meta(cfg, config)},
           {"identities",
            {{"samples", rep.samples},
             {"moufang_left", rep.moufang_left},
             {"moufang_right", rep.moufang_right},
             {"moufang_middle", rep.moufang_middle},
             {"five_term", rep.five_term},
             {"artin", rep.artin},
             {"max_scaled", rep.max_scaled},
             {"fano_table_defects", rep.table_defects}}},
           {"real_part_formula", {{"vectors", vectors}, {"standard_basis", re_std}, {"random_frames", re_frames}}},
           {"frame_table_defect", frame_defect},
           {"pass", pass}};
  emit(cfg, out, doc.dump(2) + "\n");
  return pass ? kOk : kToleranceBreach;
}

RunConfig scan_config_from_request(RunConfig cfg, OctMatrix& T) {
  json req = load_json_file(cfg.request_path);
  fs::path base = fs::path(cfg.request_path).parent_path();
  const std::string w = cfg.request_path;
  if (!req.is_object() || !req.contains("operator")) throw ConfigError("request needs an operator", w + ".operator");
  T = operator_from_request(req["operator"], base, w + ".operator");
  if (req.contains("J")) cfg.J = octonion_from_json(req["J"], w + ".J");
  if (req.contains("grid")) {
    const auto& g = req["grid"];
    std::string gw = w + ".grid";
    cfg.grid.xmin = number_field(g, "xmin", cfg.grid.xmin, gw);
    cfg.grid.xmax = number_field(g, "xmax", cfg.grid.xmax, gw);
    cfg.grid.ymin = number_field(g, "ymin", cfg.grid.ymin, gw);
    cfg.grid.ymax = number_field(g, "ymax", cfg.grid.ymax, gw);
    int res = int_field(g, "res", cfg.grid.nx, gw);
    cfg.grid.nx = int_field(g, "nx", res, gw);
    cfg.grid.ny = int_field(g, "ny", res, gw);
  }
  if (req.contains("kind")) cfg.kind = parse_kind(req["kind"].get<std::string>());
  cfg.spectra.horizon = int_field(req, "N", cfg.spectra.horizon, w);
  if (req.contains("tolerances")) {
    const auto& t = req["tolerances"];
    cfg.spectra.pa_tol = number_field(t, "pa_tol", cfg.spectra.pa_tol, w + ".tolerances");
    cfg.spectra.singular_rel = number_field(t, "singular_rel", cfg.spectra.singular_rel, w + ".tolerances");
  }
  return cfg;
}

int cmd_scan(RunConfig cfg, std::ostream& out) {
  OctMatrix T;
  if (!cfg.request_path.empty()) {
    cfg = scan_config_from_request(cfg, T);
  } else {
    if (cfg.op_path.empty()) throw ConfigError("--op is required", "op");
    T = load_operator(cfg.op_path);
  }
  validate_unit(cfg.J, "J");
  if (cfg.grid.nx < 2 || cfg.grid.ny < 2) throw ConfigError("resolution must be >= 2", "res");
  if (!(cfg.grid.xmax > cfg.grid.xmin) || !(cfg.grid.ymax > cfg.grid.ymin))
    throw ConfigError("grid bounds must be increasing", "grid");
  if (cfg.spectra.horizon < 1) throw ConfigError("N must be >= 1", "N");
  require_positive(cfg.spectra.pa_tol, "pa_tol");
  require_positive(cfg.spectra.singular_rel, "singular_rel");

  ScanGrid grid = scan_slice(T, cfg.J, cfg.grid, cfg.kind, cfg.spectra);
  json config{{"command", "scan"}, {"operator", to_json(T)}, {"J", to_json(cfg.J)}, {"grid", grid_json(cfg.grid)},
              {"kind", to_string(cfg.kind)}, {"N", cfg.spectra.horizon}};
  json meta = run_meta(cfg, config);
  std::ostringstream csv;
  write_scan_csv(csv, grid, "meta " + meta.dump());
  emit(cfg, out, csv.str());
  if (!cfg.summary_path.empty()) {
    json pts = json::array();
    for (const auto& p : grid.points)
      pts.push_back({{"x", p.x}, {"y", p.y}, {"min_sv", p.min_sv}, {"cells", p.cells}});
    json doc{{"meta", meta}, {"cell", grid.cell}, {"spectral_points", pts}};
    std::ofstream f(cfg.summary_path);
    if (!f) throw ConfigError("cannot write summary file", cfg.summary_path);
    f << doc.dump(2) << "\n";
  }
  return kOk;
}

RunConfig calc_config_from_request(RunConfig cfg, OctMatrix& T, SlicePolynomial& fn, bool& have_fn) {
  json req = load_json_file(cfg.request_path);
  fs::path base = fs::path(cfg.request_path).parent_path();
  const std::string w = cfg.request_path;
  if (!req.is_object() || !req.contains("operator")) throw ConfigError("request needs an operator", w + ".operator");
  T = operator_from_request(req["operator"], base, w + ".operator");
  if (req.contains("side")) cfg.side = parse_side(req["side"].get<std::string>());
  if (req.contains("J")) cfg.J = octonion_from_json(req["J"], w + ".J");
  if (req.contains("function")) {
    const auto& f = req["function"];
    if (f.is_string()) {
      std::string spec = f.get<std::string>();
      bool builtin = spec.rfind("pow:", 0) == 0 || spec.rfind("exp:", 0) == 0;
      fn = parse_function_spec(builtin ? spec : resolve(spec, base), cfg.side);
    } else {
      fn = function_from_json(f, cfg.side, w + ".function");
    }
    have_fn = true;
  }
  if (req.contains("contour")) {
    const auto& c = req["contour"];
    cfg.center = number_field(c, "center", cfg.center, w + ".contour");
    cfg.radius = number_field(c, "radius", cfg.radius, w + ".contour");
    cfg.nodes = int_field(c, "M", cfg.nodes, w + ".contour");
  }
  if (req.contains("tolerances")) {
    const auto& t = req["tolerances"];
    cfg.calc.quad_tol = number_field(t, "quad_tol", cfg.calc.quad_tol, w + ".tolerances");
    cfg.calc.pa_tol = number_field(t, "pa_tol", cfg.calc.pa_tol, w + ".tolerances");
  }
  if (req.contains("allow_non_pa")) cfg.calc.allow_non_pa = req["allow_non_pa"].get<bool>();
  return cfg;
}

int cmd_funcalc(RunConfig cfg, std::ostream& out) {
  OctMatrix T;
  SlicePolynomial fn;
  bool have_fn = false;
  if (!cfg.request_path.empty()) {
    cfg = calc_config_from_request(cfg, T, fn, have_fn);
  } else {
    if (cfg.op_path.empty()) throw ConfigError("--op is required", "op");
    T = load_operator(cfg.op_path);
  }
  if (!have_fn) fn = parse_function_spec(cfg.fn_spec, cfg.side);
  if (fn.side != cfg.side) throw ConfigError("function side does not match --side", "fn");
  validate_unit(cfg.J, "J");
  if (cfg.nodes < 8 || cfg.nodes % 2) throw ConfigError("nodes must be even and >= 8", "nodes");
  if (cfg.radius < 0.0) throw ConfigError("radius must be positive", "radius");
  require_positive(cfg.calc.quad_tol, "quad_tol");

  SliceContour c = default_contour(T, cfg.J, cfg.nodes);
  c.center = cfg.center;
  if (cfg.radius > 0.0) c.radius = cfg.radius;
  CalcRequest req{T, SliceFunction::from(fn), c, cfg.side, cfg.calc};
  CalcResult res = functional_calculus(req);

  json fjson{{"side", to_string(fn.side)}, {"coeffs", json::array()}};
  for (const auto& a : fn.coeffs) fjson["coeffs"].push_back(to_json(a));
  json config{{"command", "funcalc"}, {"operator", to_json(T)}, {"function", fjson}, {"J", to_json(cfg.J)},
              {"contour", {{"center", c.center}, {"radius", c.radius}, {"M", c.nodes}}},
              {"side", to_string(cfg.side)}, {"allow_non_pa", cfg.calc.allow_non_pa}};
  json doc{{"meta", run_meta(cfg, config)},
           {"result", to_json(res.value)},
           {"error_estimate", res.error_estimate},
           {"provenance",
            {{"M", c.nodes},
             {"radius", c.radius},
             {"center", c.center},
             {"pa_horizon", cfg.calc.pa_horizon},
             {"pa_residual", res.pa_residual},
             {"pa_condition", res.pa_condition},
             {"spectral_horizon", cfg.calc.spectra.horizon},
             {"operator_norm", res.op_norm},
             {"enclosure", res.trivially_enclosed ? "norm bound" : "scan"}}}};
  emit(cfg, out, doc.dump(2) + "\n");
  return kOk;
}

int cmd_series(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.op_path.empty()) throw ConfigError("--op is required", "op");
  OctMatrix T = load_operator(cfg.op_path);
  if (cfg.N < 0) throw ConfigError("N must be >= 0", "N");
  if (cfg.s.norm2() == 0.0) throw ConfigError("s must be nonzero", "s");
  const double tnorm = operator_norm(T);
  bool converges = cfg.s.norm() > tnorm;
  if (!converges)
    err << error_json("warning", "|s| <= ||T||: the truncated series need not approximate the inverse").dump() << "\n";
  OctMatrix S = resolvent_series(T, cfg.s, cfg.side, cfg.N);
  json doc{{"meta", run_meta(cfg, json{{"command", "series"}, {"operator", to_json(T)}, {"s", to_json(cfg.s)},
                                       {"N", cfg.N}, {"side", to_string(cfg.side)}})},
           {"series", to_json(S)},
           {"tail_bound", converges ? series_tail_bound(T, cfg.s, cfg.N) : -1.0},
           {"operator_norm", tnorm}};
  try {
    OctMatrix inv = reg_inverse(rs_minus_t(T, cfg.s), cfg.side);
    doc["inverse"] = to_json(inv);
    doc["defect"] = operator_norm(realize(S - inv));
  } catch (const SingularityError&) {
    doc["inverse"] = nullptr;
    doc["defect"] = nullptr;
  }
  emit(cfg, out, doc.dump(2) + "\n");
  return kOk;
}

int cmd_examples(const RunConfig& cfg, std::ostream& out) {
  auto outcomes = run_examples();
  std::ostringstream os;
  bool all = true;
  for (const auto& o : outcomes) {
    os << o.name << ": " << (o.pass ? "PASS" : "FAIL");
    if (!o.detail.empty()) os << "  (" << o.detail << ")";
    os << "\n";
    all = all && o.pass;
  }
  emit(cfg, out, os.str());
  return all ? kOk : kToleranceBreach;
}

}  // namespace

json tolerance_json(const RunConfig& cfg) {
  return json{{"identity_scaled", 1e-12},
              {"real_part", 1e-13},
              {"singular_rel", cfg.spectra.singular_rel},
              {"pa_tol", cfg.spectra.pa_tol},
              {"quad_tol", cfg.calc.quad_tol},
              {"calc_pa_tol", cfg.calc.pa_tol},
              {"invertible_rel", 1e-10}};
}

json run_meta(const RunConfig& cfg, const json& config) {
  json hashed = config;
  hashed["tolerances"] = tolerance_json(cfg);
  return json{{"tool", "octofc"}, {"version", kVersion}, {"config_hash", config_hash(hashed)},
              {"tolerances", tolerance_json(cfg)}};
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "algebra-verify") return cmd_algebra_verify(cfg, out);
    if (cfg.command == "scan") return cmd_scan(cfg, out);
    if (cfg.command == "funcalc") return cmd_funcalc(cfg, out);
    if (cfg.command == "series") return cmd_series(cfg, out, err);
    if (cfg.command == "examples") return cmd_examples(cfg, out);
    throw ConfigError("unknown command '" + cfg.command + "'", "command");
  } catch (const ConfigError& e) {
    err << error_json("config", e.what(), e.location()).dump() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << error_json("config", e.what()).dump() << "\n";
    return kConfigError;
  } catch (const json::exception& e) {
    // wrong field types in request files
    err << error_json("config", e.what(), cfg.request_path.empty() ? cfg.op_path : cfg.request_path).dump() << "\n";
    return kConfigError;
  } catch (const PreconditionError& e) {
    err << error_json("precondition", e.what()).dump() << "\n";
    return kPreconditionError;
  } catch (const ToleranceError& e) {
    json j = error_json("tolerance", e.what());
    j["error"]["value"] = e.value();
    j["error"]["tolerance"] = e.tol();
    err << j.dump() << "\n";
    return kToleranceBreach;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Octonionic slice functional calculus toolkit", "octofc"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::string J_str, s_str, kind_str = "pullback", side_str = "left";
  int res = 200;

  auto* av = app.add_subcommand("algebra-verify", "Check octonion identities and the real-part formula");
  av->add_option("--samples", cfg.samples, "Random samples")->capture_default_str();
  av->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  av->add_option("--out", cfg.out_path, "Output JSON file (default stdout)");

  auto* sc = app.add_subcommand("scan", "Sample the resolvent set on a slice grid, CSV output");
  sc->add_option("--op", cfg.op_path, "Operator JSON file");
  sc->add_option("--request", cfg.request_path, "Scan request JSON file");
  sc->add_option("--J", J_str, "Imaginary unit, 8 comma separated reals");
  sc->add_option("--xmin", cfg.grid.xmin)->capture_default_str();
  sc->add_option("--xmax", cfg.grid.xmax)->capture_default_str();
  sc->add_option("--ymin", cfg.grid.ymin)->capture_default_str();
  sc->add_option("--ymax", cfg.grid.ymax)->capture_default_str();
  sc->add_option("--res", res, "Grid points per axis")->capture_default_str();
  sc->add_option("--kind", kind_str, "pullback or pushforward")->capture_default_str();
  sc->add_option("--N", cfg.spectra.horizon, "Power horizon for the slice tests")->capture_default_str();
  sc->add_option("--pa-tol", cfg.spectra.pa_tol)->capture_default_str();
  sc->add_option("--sv-rel", cfg.spectra.singular_rel)->capture_default_str();
  sc->add_option("--out", cfg.out_path, "Output CSV file (default stdout)");
  sc->add_option("--summary", cfg.summary_path, "Write located spectral points as JSON");

  auto* fc = app.add_subcommand("funcalc", "Evaluate the slice functional calculus");
  fc->add_option("--op", cfg.op_path, "Operator JSON file");
  fc->add_option("--request", cfg.request_path, "Calc request JSON file");
  fc->add_option("--fn", cfg.fn_spec, "pow:m, exp:N, inline JSON or function JSON file")->capture_default_str();
  fc->add_option("--J", J_str, "Imaginary unit, 8 comma separated reals");
  fc->add_option("--center", cfg.center)->capture_default_str();
  fc->add_option("--radius", cfg.radius, "Contour radius (default 1.1 (||T|| + 0.1))");
  fc->add_option("--nodes", cfg.nodes)->capture_default_str();
  fc->add_option("--side", side_str, "left or right")->capture_default_str();
  fc->add_option("--quad-tol", cfg.calc.quad_tol)->capture_default_str();
  fc->add_flag("--allow-non-pa", cfg.calc.allow_non_pa, "Skip the power-associativity precondition");
  fc->add_option("--out", cfg.out_path, "Output JSON file (default stdout)");

  auto* se = app.add_subcommand("series", "Compare the resolvent series with the regular inverse");
  se->add_option("--op", cfg.op_path, "Operator JSON file");
  se->add_option("--s", s_str, "Point s, 8 comma separated reals");
  se->add_option("--N", cfg.N)->capture_default_str();
  se->add_option("--side", side_str, "left or right")->capture_default_str();
  se->add_option("--out", cfg.out_path, "Output JSON file (default stdout)");

  auto* ex = app.add_subcommand("examples", "Reproduce the worked examples");
  ex->add_option("--out", cfg.out_path, "Output text file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("config", e.what(), "arguments").dump() << "\n";
    return kConfigError;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  try {
    if (!J_str.empty()) cfg.J = parse_octonion_list(J_str, "J");
    if (!s_str.empty()) cfg.s = parse_octonion_list(s_str, "s");
    cfg.kind = parse_kind(kind_str);
    cfg.side = parse_side(side_str);
  } catch (const ConfigError& e) {
    err << error_json("config", e.what(), e.location()).dump() << "\n";
    return kConfigError;
  }
  cfg.grid.nx = cfg.grid.ny = res;
  return dispatch(cfg, out, err);
}

}  // namespace octofc
