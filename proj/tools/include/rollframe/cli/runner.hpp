#pragma once
#include "rollframe/cli/config.hpp"
#include "rollframe/rolling.hpp"

namespace rollframe::cli {

inline constexpr int kSchemaVersion = 1;

struct ResultRecord {
    std::string id;
    std::string type;
    std::string output;
    int dim_domain = 0;
    int dim_ambient = 0;
    std::vector<TraceSample> rows;
    std::vector<std::pair<std::string, double>> summary;  // config order preserved
};

struct RunOptions {
    bool oracle_only = false;  // verify mode: run oracle_compare tasks only
};

/// Execute every task of a validated config.  Deterministic: same config,
/// same records.  Module errors propagate tagged with the task id.
std::vector<ResultRecord> run(const ExperimentConfig& config, const RunOptions& opts = {});

} // namespace rollframe::cli
