#pragma once

#include <json.hpp>
#include <iosfwd>
#include <string>

#include "octofc/funcalc.hpp"
#include "octofc/spectra.hpp"

namespace octofc {

using json = nlohmann::ordered_json;

json to_json(const Octonion& x);
json to_json(const OctVector& x);
json to_json(const OctMatrix& A);  // {"n", "entries"}

// `where` is used in error locations
Octonion octonion_from_json(const json& j, const std::string& where = "octonion");
OctVector vector_from_json(const json& j, const std::string& where = "vector");
OctMatrix operator_from_json(const json& j, const std::string& where = "operator");

json parse_json_text(const std::string& text, const std::string& source);
json load_json_file(const std::string& path);
OctMatrix load_operator(const std::string& path);

// "a,b,c,d,e,f,g,h"; fewer than 8 values are zero padded
Octonion parse_octonion_list(const std::string& s, const std::string& where = "octonion");

// "pow:m", "exp:N", inline JSON object or a path to a function JSON file
SlicePolynomial parse_function_spec(const std::string& spec, Side default_side);
SlicePolynomial function_from_json(const json& j, Side default_side, const std::string& where = "function");

Side parse_side(const std::string& s);
SpectrumKind parse_kind(const std::string& s);
std::string to_string(Side s);
std::string to_string(SpectrumKind k);

// FNV-1a over the canonical dump, as 16 hex digits
std::string config_hash(const json& config);

void write_scan_csv(std::ostream& os, const ScanGrid& grid, const std::string& header_comment = "");

}  // namespace octofc
