// mfg-growth: equilibrium runs, validation suites and the consumption-law table.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfg/app/pipeline.hpp"
#include "mfg/app/validation.hpp"

namespace {

struct RunFlags {
    std::string config_path;
    std::optional<std::string> output_dir;
    std::optional<std::string> law;
    std::optional<int> agents_side;
    std::optional<int> price_samples;
    std::optional<double> mu;
    std::optional<double> tol;
    std::optional<int> max_iters;
    std::optional<int> steps;
    bool emit_plot_data = false;
    std::vector<std::string> overrides;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--config", f.config_path, "key = value config file, or a report.json to re-run");
    cmd->add_option("--output-dir", f.output_dir, "directory for CSV/JSON artifacts");
    cmd->add_option("--law", f.law, "consumption law")->check(CLI::IsMember({"paper", "legendre"}));
    cmd->add_option("--agents-side", f.agents_side, "agents per axis of the initial grid");
    cmd->add_option("--price-samples", f.price_samples, "price intervals m (m + 1 samples)");
    cmd->add_option("--mu", f.mu, "price adjustment gain");
    cmd->add_option("--tol", f.tol, "imbalance tolerance");
    cmd->add_option("--max-iters", f.max_iters, "price iteration budget");
    cmd->add_option("--steps", f.steps, "RK4 steps over the horizon");
    cmd->add_flag("--emit-plot-data", f.emit_plot_data, "write plot_*.csv data series");
    cmd->add_option("--set", f.overrides, "extra key=value override (repeatable)");
}

mfg::app::RunConfig resolve(const RunFlags& f) {
    using mfg::app::RunConfig;
    std::map<std::string, std::string> values;
    if (!f.config_path.empty()) {
        for (const auto& [k, v] : mfg::app::load_config_file(f.config_path).to_key_values()) {
            values[k] = v;
        }
    }
    auto put = [&values](const char* key, const auto& opt) {
        if (opt) {
            if constexpr (std::is_same_v<std::decay_t<decltype(*opt)>, std::string>) {
                values[key] = *opt;
            } else {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(*opt));
                values[key] = buf;
            }
        }
    };
    put("output_dir", f.output_dir);
    put("consumption_law", f.law);
    put("agents_side", f.agents_side);
    put("price_samples", f.price_samples);
    put("mu", f.mu);
    put("imbalance_tol", f.tol);
    put("max_price_iters", f.max_iters);
    put("n_steps", f.steps);
    if (f.emit_plot_data) values["emit_plot_data"] = "true";
    for (const std::string& kv : f.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw mfg::app::ConfigError("--set expects key=value, got '" + kv + "'");
        values[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    RunConfig config = RunConfig::from_key_values(values);
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean-field growth game: N-agent equilibrium solver"};
    app.require_subcommand(1);

    RunFlags run_flags, validate_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "solve the equilibrium and write artifacts");
    add_run_flags(run_cmd, run_flags);
    CLI::App* validate_cmd = app.add_subcommand("validate", "run the invariant suites");
    add_run_flags(validate_cmd, validate_flags);

    double qa_min = 0.1, qa_max = 10.0;
    int samples = 100;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle-consumption", "compare both consumption laws with brute force");
    oracle_cmd->add_option("--qa-min", qa_min, "smallest q_a");
    oracle_cmd->add_option("--qa-max", qa_max, "largest q_a");
    oracle_cmd->add_option("--samples", samples, "number of q_a values");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const mfg::app::RunConfig config = resolve(run_flags);
            const mfg::app::RunOutcome outcome = mfg::app::run(config);
            const auto& r = outcome.report;
            if (r.contains("error")) {
                std::cerr << "run failed: " << r["error"].get<std::string>() << '\n';
            } else {
                std::printf("converged=%s iterations=%d sup|iota|=%.3e fixed-point residual=%.3e "
                            "kbar error=%.3e\n",
                            r["converged"].get<bool>() ? "true" : "false", r["iterations"].get<int>(),
                            r["final_sup_imbalance"].get<double>(),
                            r["fixed_point_residual"].get<double>(), r["kbar_sup_error"].get<double>());
                for (const auto& w : r["warnings"]) {
                    std::fprintf(stderr, "warning: %s\n", w.get<std::string>().c_str());
                }
            }
            std::printf("artifacts written to %s\n", config.output_dir.c_str());
            return outcome.exit_code;
        }
        if (*validate_cmd) {
            const mfg::app::RunConfig config = resolve(validate_flags);
            const auto results = mfg::app::run_validation(config);
            std::fputs(mfg::app::format_check_table(results).c_str(), stdout);
            for (const auto& c : results) {
                if (!c.passed) return 1;
            }
            return 0;
        }
        if (*oracle_cmd) {
            const auto rows = mfg::app::consumption_table(qa_min, qa_max, samples);
            std::fputs(mfg::app::format_consumption_table(rows).c_str(), stdout);
            return 0;
        }
    } catch (const mfg::app::ConfigError& e) {
        std::cerr << "config rejected: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
