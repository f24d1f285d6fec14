#pragma once

#include <string>
#include <vector>

#include "caristi/baire.hpp"
#include "caristi/borel.hpp"
#include "caristi/gadgets.hpp"
#include "json.hpp"

namespace caristi {

using json = nlohmann::ordered_json;

// Converters between the library objects and their JSON document forms.
// Rationals travel as exact "p/q" strings, code points as bare values
// (string = rational, array = stem digits, integer = finite index,
// {"tuple": [...]} = product point). Parsers throw BadInput with a
// JSON-path diagnostic; serializers throw BadInput on generator-backed
// codes, which have no finite document form.

json rat_to_json(const Rat& q);
Rat rat_from_json(const json& j, const std::string& path);

json space_to_json(const SpaceCode& s);
SpaceCode space_from_json(const json& j, const std::string& path = "$");

json code_point_to_json(const CodePoint& p);
CodePoint code_point_from_json(const json& j, const std::string& path = "$");

// clauses as [a, "r", b, "q"] rows
json continuous_to_json(const ContinuousCode& f);
ContinuousCode continuous_from_json(const json& j, const std::string& path = "$");

// clauses as [a, "r", "q"] rows
json lsc_to_json(const LscCode& v);
LscCode lsc_from_json(const json& j, const std::string& path = "$");

// {"ball": [a, "r"]} leaves under {"op": "union"|"inter", "children": [...]}
json borel_to_json(const BorelCode& c);
BorelCode borel_from_json(const json& j, const std::string& path = "$");

// {"leaf": <continuous>} or {"limit": [...]}
json baire_to_json(const BaireCode& x);
BaireCode baire_from_json(const json& j, const std::string& path = "$");

// {"tree": [[digit, ...], ...]}
json tree_to_json(const FiniteTree& t);
FiniteTree tree_from_json(const json& j, const std::string& path = "$");

// {"injection": [[m, h(m)], ...]}
json injection_to_json(const InjectionTable& h);
InjectionTable injection_from_json(const json& j, const std::string& path = "$");

// {"c": ["1/2", ...]}
json thresholds_to_json(const std::vector<Rat>& c);
std::vector<Rat> thresholds_from_json(const json& j, const std::string& path = "$");

// parse with BadInput diagnostics instead of nlohmann exceptions
json parse_json_text(const std::string& text, const std::string& origin);
json load_json_file(const std::string& file);

}  // namespace caristi
