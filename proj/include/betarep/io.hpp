#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "betarep/search.hpp"

namespace betarep {

using json = nlohmann::json;

json field_to_json(const FieldDesc& K);
FieldDesc field_from_json(const json& j);

json kelem_to_json(const KElem& x);
KElem kelem_from_json(const FieldDesc& K, const json& j);

json ball_to_json(const RealBall& b);

json spec_to_json(const RecurrenceSpec& spec);
RecurrenceSpec spec_from_json(const json& j);

json base_to_json(const BaseSpec& base);
BaseSpec base_from_json(const json& j);

json hypotheses_to_json(const HypothesisReport& rep);
json trace_to_json(const std::vector<TraceEntry>& trace);
json bound_result_to_json(const BoundResult& br);
json solution_to_json(const Solution& sol, const BaseSpec& base);
json report_to_json(const SearchReport& rep, bool include_timing = true,
                    bool include_trace = false);
std::string report_to_csv(const SearchReport& rep);

std::vector<Preset> load_presets(const std::string& path);
RecurrenceSpec load_spec_file(const std::string& path);
BaseSpec load_base_file(const std::string& path);

}  // namespace betarep
