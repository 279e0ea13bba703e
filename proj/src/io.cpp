#include "octofc/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "octofc/errors.hpp"

namespace octofc {

json to_json(const Octonion& x) {
  json a = json::array();
  for (double v : x.c) a.push_back(v);
  return a;
}

json to_json(const OctVector& x) {
  json a = json::array();
  for (const auto& e : x.entries()) a.push_back(to_json(e));
  return a;
}

json to_json(const OctMatrix& A) {
  json rows = json::array();
  for (std::size_t i = 0; i < A.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < A.n(); ++j) row.push_back(to_json(A(i, j)));
    rows.push_back(row);
  }
  return json{{"n", A.n()}, {"entries", rows}};
}

Octonion octonion_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 8) throw ConfigError("expected an array of 8 numbers", where);
  Octonion x;
  for (int i = 0; i < 8; ++i) {
    if (!j[i].is_number()) throw ConfigError("expected a number", where + "[" + std::to_string(i) + "]");
    x.c[i] = j[i].get<double>();
  }
  return x;
}

OctVector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError("expected an array of octonions", where);
  OctVector x(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) x[i] = octonion_from_json(j[i], where + "[" + std::to_string(i) + "]");
  return x;
}

OctMatrix operator_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError("operator must be an object", where);
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw ConfigError("field n must be a positive integer", where + ".n");
  auto n = j["n"].get<std::size_t>();
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != n)
    throw ConfigError("entries must be an array of n rows", where + ".entries");
  OctMatrix A(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = j["entries"][r];
    std::string loc = where + ".entries[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != n) throw ConfigError("row must have n entries", loc);
    for (std::size_t c = 0; c < n; ++c) A(r, c) = octonion_from_json(row[c], loc + "[" + std::to_string(c) + "]");
  }
  return A;
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(), source + ":byte " + std::to_string(e.byte));
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

OctMatrix load_operator(const std::string& path) { return operator_from_json(load_json_file(path), path); }

Octonion parse_octonion_list(const std::string& s, const std::string& where) {
  Octonion x;
  std::stringstream ss(s);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 8) throw ConfigError("more than 8 components", where);
    try {
      std::size_t used = 0;
      x.c[i] = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'", where + "[" + std::to_string(i) + "]");
    }
    ++i;
  }
  if (i == 0) throw ConfigError("empty octonion", where);
  return x;
}

Side parse_side(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw ConfigError("side must be left or right", "side");
}

SpectrumKind parse_kind(const std::string& s) {
  if (s == "pullback") return SpectrumKind::Pullback;
  if (s == "pushforward") return SpectrumKind::Pushforward;
  throw ConfigError("kind must be pullback or pushforward", "kind");
}

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }
std::string to_string(SpectrumKind k) { return k == SpectrumKind::Pullback ? "pullback" : "pushforward"; }

SlicePolynomial function_from_json(const json& j, Side default_side, const std::string& where) {
  if (!j.is_object()) throw ConfigError("function must be an object", where);
  Side side = default_side;
  if (j.contains("side")) {
    if (!j["side"].is_string()) throw ConfigError("side must be a string", where + ".side");
    side = parse_side(j["side"].get<std::string>());
  }
  if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
    throw ConfigError("coeffs must be a non-empty array", where + ".coeffs");
  SlicePolynomial p{side, {}};
  for (std::size_t k = 0; k < j["coeffs"].size(); ++k)
    p.coeffs.push_back(octonion_from_json(j["coeffs"][k], where + ".coeffs[" + std::to_string(k) + "]"));
  return p;
}

SlicePolynomial parse_function_spec(const std::string& spec, Side default_side) {
  auto builtin = [&](const std::string& prefix) -> std::optional<int> {
    if (spec.rfind(prefix, 0) != 0) return std::nullopt;
    std::string rest = spec.substr(prefix.size());
    try {
      std::size_t used = 0;
      int v = std::stoi(rest, &used);
      if (used != rest.size() || v < 0) throw std::invalid_argument(rest);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad builtin function '" + spec + "'", "fn");
    }
  };
  if (auto m = builtin("pow:")) return SlicePolynomial::monomial(*m, default_side);
  if (auto N = builtin("exp:")) return SlicePolynomial::exp_truncated(*N, default_side);
  if (!spec.empty() && spec.front() == '{') return function_from_json(parse_json_text(spec, "fn"), default_side);
  return function_from_json(load_json_file(spec), default_side, spec);
}

std::string config_hash(const json& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_scan_csv(std::ostream& os, const ScanGrid& g, const std::string& header_comment) {
  if (!header_comment.empty()) os << "# " << header_comment << "\n";
  os << "x,y,min_sv,invertible,extendable,liftable,in_pullback,in_pushforward\n";
  os << std::setprecision(17);
  for (int j = 0; j < g.grid.ny; ++j) {
    for (int i = 0; i < g.grid.nx; ++i) {
      const auto& r = g.at(i, j);
      os << g.grid.x(i) << ',' << g.grid.y(j) << ',' << r.min_sv << ',' << r.invertible << ','
         << r.extendable << ',' << r.liftable << ',' << r.in_pullback << ',' << r.in_pushforward << '\n';
    }
  }
}

}  // namespace octofc
