#pragma once

// JSON file formats and command reports. Rationals are always written as
// lowest-terms "p/q" strings (or "p" for integers), never as decimals.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "delzant/bpolytope.hpp"
#include "delzant/error.hpp"
#include "delzant/homology.hpp"
#include "delzant/polytope.hpp"

namespace delzant::io {

using Json = nlohmann::ordered_json;

// Throws ParseError carrying line and column.
Json parse(std::string_view text);
// Two-space indentation plus a trailing newline; the canonical file layout.
std::string dump(const Json& j);

Json to_json(const Rational& q);
Json to_json(const IntVec& v);
Json to_json(const RatVec& v);

// Schema violations throw SchemaError naming a JSON pointer relative to
// `where`.
Rational rational_from_json(const Json& j, const std::string& where);
IntVec intvec_from_json(const Json& j, const std::string& where);

Json to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j, const std::string& where = "");

Json to_json(const WeightedAdjacencyGraph& g);
WeightedAdjacencyGraph graph_from_json(const Json& j, const std::string& where = "");

Json to_json(const BPolytope& bp);
BPolytope bpolytope_from_json(const Json& j, const std::string& where = "");

using Input = std::variant<Polytope, BPolytope>;
// A document with a "graph" member is a b-polytope, otherwise a polytope.
Input input_from_json(const Json& j);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Input read_input(const std::string& path);

Json to_json(const DelzantCheck& c);
Json to_json(const ParallelHyperplane& f);
Json to_json(const MorseReport& r);
Json to_json(const BMomentCodomain& z);
Json to_json(const ReassemblyPlan& plan);
Json to_json(const EdgeCollar& c);

// {"status", "payload", "log"}.
Json report(bool ok, Json payload, const std::vector<std::string>& log = {});
Json error_payload(const Error& e);

}  // namespace delzant::io
