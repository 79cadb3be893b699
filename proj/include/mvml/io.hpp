#pragma once

#include <string>

#include <json.hpp>

#include "mvml/algebra.hpp"
#include "mvml/bridges.hpp"
#include "mvml/kripke.hpp"
#include "mvml/necessitation.hpp"
#include "mvml/pcp.hpp"

namespace mvml {

using Json = nlohmann::ordered_json;

/// "std-mv", "std-godel", "std-product", "exp-chain" or "mv-N".
Algebra algebra_from_name(const std::string& name);

/// {"kind": ...} with "n" for mv-n and "tables" for finite-table. A bare name string is also accepted.
Algebra algebra_from_json(const Json& j);
Json algebra_to_json(const Algebra& alg);

/// Rationals as "p/q" strings (JSON integers accepted), power-chain values as
/// {"pow": "p/q"} or "zero", finite-table values as indices.
Value value_from_json(const Algebra& alg, const Json& j);
Json value_to_json(const Value& v);

/// {"worlds": [...], "edges": [["a","b"], ...]}; other keys are ignored.
KripkeFrame frame_from_json(const Json& j);
Json frame_to_json(const KripkeFrame& fr);

/// {"algebra", "worlds", "edges", "valuation": {world: {var: value}}}. Every world
/// must assign the same variables.
KripkeModel model_from_json(const Json& j);
Json model_to_json(const KripkeModel& m);

/// {"base": 2, "pairs": [[["1",1],["3",2]], ...]}, numerals as [decimal string, length].
PCPInstance instance_from_json(const Json& j);
Json instance_to_json(const PCPInstance& p);

/// {"holds": bool, "witness": {"model", "world", "formula", "value"}}.
Json verdict_to_json(const Verdict& v);
Json report_to_json(const SeparationReport& r);
Json violations_to_json(const std::vector<ClaimViolation>& vs);

/// Reads and parses a JSON file; throws DomainError on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace mvml
