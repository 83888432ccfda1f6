#pragma once

#include "invreg/measures.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace invreg::cli {

enum ExitCode : int { kSuccess = 0, kRuntimeError = 1, kUsageError = 2 };

/// Entry point shared by the `invreg` binary and the tests. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Measure specification blocks, e.g.
///   {"kind": "gaussian", "mean": [...], "cov": [[...]], "log_transform": false}
///   {"kind": "standard_gaussian", "dim": 10}
///   {"kind": "uniform", "lower": [...], "upper": [...]}
InputMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json measure_to_json(const InputMeasure& m);

}  // namespace invreg::cli
