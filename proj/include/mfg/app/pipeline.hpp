#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfg/app/run_config.hpp"

namespace mfg::app {

/// Figure-shape checks reported as warnings, never as failures.
struct QualitativeDiagnostics {
    bool price_monotone = false;      // samples[i+1] <= samples[i] + 1e-6
    bool abar_rises_then_falls = false;
    std::vector<std::string> warnings;
};

QualitativeDiagnostics diagnose(const PriceCurve& price, const AveragesSeries& averages);

/// sup_t |k_bar(t) - k_bar(0) exp((xi - delta) t)|, the closed form under market clearing.
double kbar_sup_error(const AveragesSeries& averages, const Economy& economy);

struct RunOutcome {
    int exit_code = 0;
    nlohmann::json report;
    std::optional<EquilibriumReport> equilibrium;
    std::optional<AveragesSeries> averages;
};

/// Solves the equilibrium, writes price.csv, trajectories.csv, averages.csv and
/// report.json (plus plot data on request) into config.output_dir.
/// Exit code 0 on convergence, 1 when the price budget runs out, 2 when an agent
/// solve fails; report.json is written in every case.
RunOutcome run(const RunConfig& config);

/// One row of the consumption-law comparison table.
struct ConsumptionRow {
    double q_a;
    double paper;
    double legendre;
    double brute_force;
    double paper_deviation;
    double legendre_deviation;
};

std::vector<ConsumptionRow> consumption_table(double qa_min, double qa_max, int samples);
std::string format_consumption_table(const std::vector<ConsumptionRow>& rows);

}  // namespace mfg::app
