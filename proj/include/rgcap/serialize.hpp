#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "rgcap/bounds.hpp"
#include "rgcap/experiments.hpp"
#include "rgcap/mincut.hpp"

namespace rgcap {

inline constexpr const char* kVersion = "0.1.0";

// JSON objects are flat. Non-finite numbers (an undefined lower probability
// bound, say) serialize as null.

nlohmann::json model_to_json(const ModelParams& model);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const CapacityResult& result);
/// Full result including the per-trial capacities.
nlohmann::json to_json(const ExperimentResult& result);
nlohmann::json to_json(const IndependenceTestResult& result);

/// Column header and one summary row:
/// model params, d, lambda, epsilon, c_min, trials, violation counts,
/// mean_ratio, std_ratio.
std::string experiment_csv_header();
std::string experiment_csv_row(const ExperimentResult& result);

std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& report);

}  // namespace rgcap
