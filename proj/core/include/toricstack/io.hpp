#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

#include "toricstack/cox.hpp"
#include "toricstack/fan.hpp"
#include "toricstack/lattice.hpp"
#include "toricstack/stacky.hpp"

namespace toricstack::io {

using json = nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "1.0";

/// Integers outside the 53-bit safe range are written as decimal strings.
json to_json(const Integer& value);
json to_json(const IntegerVector& values);
json to_json(const IntegerMatrix& m);
json to_json(const FgAbelianGroup& g);
json to_json(const ValidationReport& report);

Integer integer_from_json(const json& j, const std::string& where);
/// Accepts an integer or a "p/q" / "p" string.
Rational rational_from_json(const json& j, const std::string& where);
std::string rational_to_string(const Rational& q);

/// Parses a stacky-data document. Cones are closed under faces; the result
/// is not validated (see validate_data).
StackyData parse_stacky_data(const json& doc, const std::string& where = "");
/// Writes only the maximal cones.
json stacky_data_to_json(const StackyData& data);

MorphismData parse_morphism(const json& doc);
json morphism_to_json(const MorphismData& md);

json load_json_file(const std::string& path);

}  // namespace toricstack::io
