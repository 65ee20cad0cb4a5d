#pragma once

#include <json.hpp>
#include <string>

#include "tumorseg/metrics.hpp"
#include "tumorseg/phantom.hpp"

namespace tumorseg {

/// Phantom description: width, height, foreground, background, noise, seed
/// and a "disks" array of {cx, cy, radius[, intensity]}. Missing scalars take
/// the PhantomSpec defaults. Throws kManifest on malformed input.
PhantomSpec phantom_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json phantom_spec_to_json(const PhantomSpec& spec);

nlohmann::ordered_json to_json(const ConfusionCounts& c);
nlohmann::ordered_json to_json(const MetricSet& m);
nlohmann::ordered_json to_json(const AreaResult& a);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

}  // namespace tumorseg
