#include "rollframe/cli/config.hpp"
#include "rollframe/cli/emit.hpp"
#include "rollframe/cli/runner.hpp"
#include "rollframe/zoo.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalError = 3, kIoError = 4 };

int log_level() {
    const char* env = std::getenv("ROLLFRAME_LOG");
    if (!env) return 0;
    const std::string v = env;
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[rollframe] " << msg << "\n";
}

void emit_error(const std::string& kind, const std::string& message) {
    // machine-readable error object on stderr
    std::string escaped;
    for (char c : message) {
        if (c == '"' || c == '\\') escaped += '\\';
        if (c == '\n') { escaped += "\\n"; continue; }
        escaped += c;
    }
    std::cerr << "{\"error\":{\"kind\":\"" << kind << "\",\"message\":\"" << escaped << "\"}}\n";
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw rollframe::cli::IoError("cannot read config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_command(const std::string& config_path, const std::string& out_dir,
                int steps_override, const std::string& format, bool oracle_only) {
    using namespace rollframe::cli;
    ExperimentConfig cfg = parse_config(read_file(config_path));
    if (steps_override > 0) {
        if (steps_override < 16) throw ValidationError({"grid.steps must be >= 16"});
        cfg.steps = steps_override;
    }
    log_info("running " + std::to_string(cfg.tasks.size()) + " task(s) on " + cfg.manifold_name +
             "/" + cfg.curve_kind + " at steps=" + std::to_string(cfg.steps));
    RunOptions opts;
    opts.oracle_only = oracle_only;
    const auto records = run(cfg, opts);
    if (oracle_only) {
        for (const auto& rec : records) {
            std::cout << rec.id << ":";
            for (const auto& [key, value] : rec.summary) std::cout << " " << key << "=" << value;
            std::cout << "\n";
        }
        return kOk;
    }
    for (const auto& path : emit(records, format, out_dir))
        log_info("wrote " + path.string());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rolling-tangent-space development of curves on chart-defined submanifolds"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", format = "csv";
    int steps_override = 0;

    auto* run_cmd = app.add_subcommand("run", "execute every task of a config");
    run_cmd->add_option("config", config_path, "experiment config file")->required();
    run_cmd->add_option("--out-dir", out_dir, "output directory");
    run_cmd->add_option("--steps", steps_override, "override grid.steps");
    run_cmd->add_option("--format", format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));

    auto* zoo_cmd = app.add_subcommand("zoo", "manifold zoo");
    bool zoo_list = false;
    zoo_cmd->add_subcommand("list", "list available manifolds")
        ->callback([&] { zoo_list = true; });

    auto* verify_cmd = app.add_subcommand("verify", "run only the oracle_compare tasks");
    verify_cmd->add_option("config", config_path, "experiment config file")->required();
    verify_cmd->add_option("--out-dir", out_dir, "output directory");
    verify_cmd->add_option("--steps", steps_override, "override grid.steps");
    verify_cmd->add_option("--format", format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(zoo_cmd)) {
            if (!zoo_list) {
                emit_error("usage", "expected: rollframe zoo list");
                return kConfigError;
            }
            for (const auto& name : rollframe::zoo_chart_names()) {
                const auto entry = rollframe::make_chart(name);
                std::cout << name << ": " << entry.reference_facts << "\n";
            }
            return kOk;
        }
        const bool oracle_only = app.got_subcommand(verify_cmd);
        return run_command(config_path, out_dir, steps_override, format, oracle_only);
    } catch (const rollframe::cli::ParseError& e) {
        emit_error("parse", e.what());
        return kConfigError;
    } catch (const rollframe::cli::ValidationError& e) {
        emit_error("validation", e.what());
        return kConfigError;
    } catch (const rollframe::cli::IoError& e) {
        emit_error("io", e.what());
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        emit_error("io", e.what());
        return kIoError;
    } catch (const rollframe::Error& e) {
        emit_error("numerical", e.what());
        return kNumericalError;
    }
}
