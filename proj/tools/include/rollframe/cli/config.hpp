#pragma once
#include "rollframe/errors.hpp"

#include <map>
#include <string>
#include <vector>

namespace rollframe::cli {

struct ParseError : Error {
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line(line), col(col) {}
    int line;
    int col;
};

/// Carries every violation found, not just the first.
struct ValidationError : Error {
    explicit ValidationError(std::vector<std::string> violations_)
        : Error(join(violations_)), violations(std::move(violations_)) {}
    std::vector<std::string> violations;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
        return out;
    }
};

struct TaskSpec {
    std::string id;
    std::string type;  // trace | transport | geodesic_check | holonomy | oracle_compare
    std::string output;
    double t = 0.0;            // fixed development time (trace/transport)
    bool has_t = false;
    std::vector<double> v;     // initial vector coords (transport/oracle_compare)
    double h_oracle = 1e-2;    // oracle_compare step
};

struct ExperimentConfig {
    std::string manifold_name;
    std::map<std::string, double> manifold_params;
    std::string curve_kind;
    std::map<std::string, double> curve_params;
    double t0 = 0.0;
    double t1 = 1.0;
    int steps = 256;
    std::vector<TaskSpec> tasks;
};

/// Parse and validate a config file.  Throws ParseError on malformed text and
/// ValidationError (listing all violations) on a well-formed but invalid tree.
ExperimentConfig parse_config(const std::string& text);

} // namespace rollframe::cli
