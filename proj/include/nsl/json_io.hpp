#pragma once

#include <string>

#include <json.hpp>

#include "nsl/bounds_audit.hpp"

namespace nsl {

using Json = nlohmann::json;

Json to_json(const CurveGraph& g);
CurveGraph curve_from_json(const Json& j);

Json to_json(const Subcurve& s);
Subcurve subcurve_from_json(const Json& j);

Json to_json(const SheafOnTree& f);
SheafOnTree sheaf_from_json(const Json& j);

Json to_json(const ChargeDatum& d);
ChargeDatum datum_from_json(const Json& j);

Json to_json(const ChargeValue& z);

Json to_json(const FMDatum& d);
FMDatum fm_from_json(const Json& j);

Json to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

Json to_json(const TraceStep& t);

// Parses text, mapping parse failures to the schema error class.
Json parse_json(const std::string& text);
Json load_json_file(const std::string& path);

// Serialization used by the CLI: sorted keys, 2-space indent, trailing
// newline; byte-stable for golden tests.
std::string dump_json(const Json& j);

}  // namespace nsl
