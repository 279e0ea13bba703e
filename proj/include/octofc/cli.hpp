#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "octofc/io.hpp"

namespace octofc {

enum ExitCode : int { kOk = 0, kConfigError = 2, kPreconditionError = 3, kToleranceBreach = 4 };

struct RunConfig {
  std::string command;
  std::string op_path;
  std::string request_path;
  std::string out_path;
  std::string summary_path;
  // algebra-verify
  int samples = 10000;
  std::uint64_t seed = 1;
  // scan
  Octonion J = Octonion::unit(4);
  GridSpec grid{};
  SpectrumKind kind = SpectrumKind::Pullback;
  SpectraOptions spectra{};
  // funcalc / series
  std::string fn_spec = "pow:1";
  Side side = Side::Left;
  double center = 0.0;
  double radius = 0.0;  // 0 selects the default contour
  int nodes = 1024;
  CalcOptions calc{};
  Octonion s = Octonion(5.0);
  int N = 60;
};

json tolerance_json(const RunConfig& cfg);
json run_meta(const RunConfig& cfg, const json& config);

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// parses argv (CLI11) then dispatches; parse failures exit with kConfigError
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// the worked examples; one "name: PASS|FAIL" line each
struct ExampleOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};
std::vector<ExampleOutcome> run_examples();

}  // namespace octofc
