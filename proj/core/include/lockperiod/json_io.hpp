#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lockperiod/dp_optimizer.hpp"
#include "lockperiod/experiment.hpp"
#include "lockperiod/matching.hpp"
#include "lockperiod/rolling.hpp"
#include "lockperiod/schedule.hpp"

namespace lockperiod {

using nlohmann::json;

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

/// {"T": int, "streams": [{"mu": {"num","den"}, "lambda": {...}, "count": int, "direction": "U"|"D"}]}.
/// `directions`, when given, must have one entry per stream.
json stream_set_to_json(const StreamSet& set, const std::vector<Direction>* directions = nullptr);
StreamSet stream_set_from_json(const json& j);
/// Streams with their direction; a missing direction is an error.
std::vector<DirectedStream> directed_streams_from_json(const json& j);

/// {"period": int, "initial_alignment": "U"|"D", "actions": ["D"|"U"|"W", ...]}.
json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);

/// {"streams": [{"direction": "U"|"D", "lambda": int, "mu": int}]}.
json instance_to_json(const PeriodicInstance& inst);
PeriodicInstance instance_from_json(const json& j);

/// Canonical optimum with its schedule, plus the optimum under the literal transition cost.
json optimal_result_to_json(const OptimalResult& canonical, const std::optional<OptimalResult>& literal);

json chunk_to_json(const Chunk& c);

ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& c);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace lockperiod
