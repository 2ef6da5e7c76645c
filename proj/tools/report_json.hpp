#pragma once

#include <json.hpp>

#include "siri/bench.hpp"
#include "siri/cv.hpp"
#include "siri/select.hpp"

namespace siri::cli {

using Json = nlohmann::ordered_json;

// Non-finite values become null.
Json number(double v);

Json ranking_json(const Dataset& data, const std::vector<ScreenEntry>& ranking);
Json selection_json(const Dataset& data, const SelectionState& state);
// Thresholds the rule produces for the homoscedastic step and for the
// augmented step at every conditioning size up to max_d.
Json thresholds_json(const HyperParams& hyper, int n, int p, int max_d);
Json cv_table_json(const CvResult& cv);
Json truth_json(const ScenarioSpec& spec);
Json spec_json(const ScenarioSpec& spec);
Json report_json(const BenchReport& report, bool timing);
Json report_json(const ScreeningReport& report, bool timing);

}  // namespace siri::cli
