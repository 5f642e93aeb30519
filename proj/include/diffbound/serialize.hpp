#ifndef DIFFBOUND_SERIALIZE_HPP
#define DIFFBOUND_SERIALIZE_HPP

#include <json.hpp>

#include "diffbound/bounds.hpp"
#include "diffbound/oracle.hpp"
#include "diffbound/prolong.hpp"

namespace diffbound {

// BoundExpr: { "op": "int", "value": "<decimal>" } or
//            { "op": "pow"|"mul"|"add"|"binom"|"quot", "args": [ ... ] }
nlohmann::json to_json(const BoundExpr& e);
BoundExpr bound_expr_from_json(const nlohmann::json& j);

// Magnitude: { "log_height": h, "log_value": v }
nlohmann::json to_json(const Magnitude& m);

// Exact values serialize as decimal strings, magnitudes as above.
nlohmann::json to_json(const EvalResult& r);

// { "ell": ..., "coords": [names...], "equations":
//   [ { "generator": i, "xi": [..], "poly": "<grammar text>" } ... ] }
nlohmann::json to_json(const ProlongationOutput& out);

nlohmann::json to_json(const AntichainSet& s);
nlohmann::json to_json(const ChainSearchReport& r);
nlohmann::json to_json(const Case1Report& r);
nlohmann::json to_json(const ProlongPointsReport& r);
nlohmann::json to_json(const TSoundnessReport& r);

}  // namespace diffbound

#endif
