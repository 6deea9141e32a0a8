#pragma once

#include "smoothsched/classification.hpp"
#include "smoothsched/constructions.hpp"
#include "smoothsched/model.hpp"
#include "smoothsched/smoothing.hpp"

#include <json.hpp>

#include <string>

namespace smoothsched {

using Json = nlohmann::json;

// All machine indices in JSON are 1-based. Speeds must already be sorted
// non-increasingly; unsorted input is rejected rather than silently reordered
// so that schedules written against the file keep their meaning.

/// {"speeds": [...], "jobs": [{"p": 0.5, "allowed": [1, 2]}, ...]}
Json to_json(const Instance& instance);
Instance instance_from_json(const Json& json);

/// {"assignment": [1, 2, 1, ...]}
Json to_json(const Schedule& schedule);
Schedule schedule_from_json(const Json& json);

/// {"pieces": [{"a": 0.9, "b": 1.0, "h": 10.0}], "scale": 1.0, "phi": 10.0}
/// With "phi" absent, the smallest admissible value is used.
Json to_json(const DensitySpec& density);
DensitySpec density_from_json(const Json& json);

/// Instance layout with a "density" object per job in place of "p".
Json to_json(const SmoothedInstanceSpec& spec);
SmoothedInstanceSpec spec_from_json(const Json& json);

Json to_json(const ScheduleReport& report);
Json to_json(const Classification& classification);
Json to_json(const StructureReport& report);
Json to_json(const RatioEstimate& estimate);

/// Classes, parameters, warnings, events, checks and makespans of a sample;
/// the instance and schedules are written separately.
Json metadata_json(const Construction& construction, const ConstructionSample& sample);

Json read_json_file(const std::string& path);

/// Throws std::runtime_error when the file cannot be written.
void write_json_file(const std::string& path, const Json& json);
void write_text_file(const std::string& path, const std::string& text);

} // namespace smoothsched
