#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sr/cost.hpp"
#include "sr/gamma.hpp"

namespace sr {

/// Invalid or malformed experiment spec; maps to exit code 2.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
    std::string task;
    int dim = 1;
    CostFunction cost = CostFunction::step(2.0);
    uint64_t seed = 0;
    std::string out_dir = "run";
    nlohmann::json params;  // task-specific parameters, already schema-checked
};

struct ExperimentResult {
    int exit_code = 0;
    std::vector<std::string> artifacts;
    std::string message;
};

/// Parses and validates a JSON experiment document. Throws SchemaError with
/// field diagnostics on any violation.
ExperimentSpec parse_experiment(const std::string& json_text,
                                const std::optional<std::string>& out_override = {},
                                const std::optional<uint64_t>& seed_override = {});

/// Executes the spec's task and writes its artifacts plus a manifest with
/// content hashes into the output directory. Exceptions map to exit codes:
/// SchemaError 2, ResourceError 3, anything else 4.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Re-keys the artifacts of a finished run into tidy long-format CSVs
/// (series, x, y, y_err). Returns the files written.
std::vector<std::string> emit_plot_data(const std::string& run_dir);

/// Builds the annealing schedule from optional JSON overrides.
AnnealSchedule schedule_from_json(const nlohmann::json& j);

}  // namespace sr
