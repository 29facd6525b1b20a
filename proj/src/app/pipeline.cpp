#include "mfg/app/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "mfg/app/artifacts.hpp"
#include "mfg_oracles/oracles.hpp"

namespace mfg::app {

namespace fs = std::filesystem;

QualitativeDiagnostics diagnose(const PriceCurve& price, const AveragesSeries& averages) {
    QualitativeDiagnostics d;
    const auto s = price.samples();
    d.price_monotone = true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i + 1] > s[i] + 1e-6) {
            d.price_monotone = false;
            d.warnings.push_back("price increases between nodes " + std::to_string(i) + " and " +
                                 std::to_string(i + 1));
            break;
        }
    }
    const auto& a = averages.a_bar;
    const auto peak = static_cast<std::size_t>(std::max_element(a.begin(), a.end()) - a.begin());
    d.abar_rises_then_falls = peak > 0 && peak + 1 < a.size() && a[peak] > a.front() &&
                              a[peak] > a.back();
    if (!d.abar_rises_then_falls) d.warnings.push_back("average goods do not rise then fall");
    return d;
}

double kbar_sup_error(const AveragesSeries& averages, const Economy& economy) {
    const double rate = economy.xi_coeff - economy.depreciation_rate;
    const double k0 = averages.k_bar.front();
    double worst = 0.0;
    for (int j = 0; j < averages.grid.nodes(); ++j) {
        const double exact = k0 * std::exp(rate * averages.grid.time(j));
        worst = std::max(worst, std::abs(averages.k_bar[static_cast<std::size_t>(j)] - exact));
    }
    return worst;
}

namespace {

void echo_config(nlohmann::json& report, const RunConfig& config) {
    for (const auto& [key, value] : config.to_key_values()) report["config." + key] = value;
}

int count_floor_nodes(const PriceCurve& price, double floor) {
    const auto s = price.samples();
    return static_cast<int>(std::count_if(s.begin(), s.end(), [floor](double v) { return v <= floor; }));
}

}  // namespace

RunOutcome run(const RunConfig& config) {
    config.validate();
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);

    RunOutcome outcome;
    nlohmann::json& report = outcome.report;
    const Economy economy = config.economy();

    EquilibriumReport partial;
    try {
        outcome.equilibrium = solve_equilibrium(config.population(), economy, config.grid(),
                                                config.shooting, config.equilibrium(), &partial);
    } catch (const std::exception& e) {
        report["converged"] = false;
        report["error"] = e.what();
        report["iterations"] = partial.iterations;
        report["imbalance_history"] = partial.imbalance_history;
        report["step_history"] = partial.step_history;
        echo_config(report, config);
        write_json(dir / "report.json", report);
        write_price_csv(dir / "price.csv", partial.price);
        outcome.exit_code = 2;
        return outcome;
    }

    const EquilibriumReport& eq = *outcome.equilibrium;
    const Population population = config.population();
    outcome.averages = averages(eq.trajectories, population);
    const AveragesSeries& av = *outcome.averages;

    write_price_csv(dir / "price.csv", eq.price);
    write_trajectories_csv(dir / "trajectories.csv", eq.trajectories);
    write_averages_csv(dir / "averages.csv", av);
    if (config.emit_plot_data) {
        write_plot_data(dir, eq.price, eq.trajectories, av,
                        economy.xi_coeff - economy.depreciation_rate);
    }

    const QualitativeDiagnostics diag = diagnose(eq.price, av);
    report["converged"] = eq.converged;
    report["market_cleared"] = eq.market_cleared;
    report["iterations"] = eq.iterations;
    report["agents"] = static_cast<int>(population.size());
    report["imbalance_history"] = eq.imbalance_history;
    report["step_history"] = eq.step_history;
    report["final_sup_imbalance"] = eq.imbalance_history.back();
    report["fixed_point_residual"] = eq.step_history.back();
    report["terminal_imbalance"] = eq.final_imbalance.back();
    report["price_floor_nodes"] = count_floor_nodes(eq.price, config.price_floor);
    report["kbar_sup_error"] = kbar_sup_error(av, economy);
    report["price_monotone"] = diag.price_monotone;
    report["abar_rises_then_falls"] = diag.abar_rises_then_falls;
    report["warnings"] = diag.warnings;
    echo_config(report, config);
    write_json(dir / "report.json", report);

    outcome.exit_code = eq.converged ? 0 : 1;
    return outcome;
}

std::vector<ConsumptionRow> consumption_table(double qa_min, double qa_max, int samples) {
    if (!(qa_min > 0.0 && qa_min < qa_max)) {
        throw std::invalid_argument("consumption table needs 0 < q_a_min < q_a_max");
    }
    if (samples < 2) throw std::invalid_argument("consumption table needs at least 2 samples");
    std::vector<ConsumptionRow> rows;
    for (int s = 0; s < samples; ++s) {
        ConsumptionRow row{};
        row.q_a = qa_min + (qa_max - qa_min) * s / (samples - 1);
        row.paper = optimal_consumption(row.q_a, ConsumptionLaw::PaperLiteral);
        row.legendre = optimal_consumption(row.q_a, ConsumptionLaw::LegendreExact);
        row.brute_force = static_cast<double>(oracles::brute_force_consumption(row.q_a));
        row.paper_deviation = std::abs(row.paper - row.brute_force);
        row.legendre_deviation = std::abs(row.legendre - row.brute_force);
        rows.push_back(row);
    }
    return rows;
}

std::string format_consumption_table(const std::vector<ConsumptionRow>& rows) {
    std::string out = "q_a,paper_c,legendre_c,brute_force_c,paper_deviation,legendre_deviation\n";
    for (const ConsumptionRow& r : rows) {
        out += format_decimal(r.q_a) + ',' + format_decimal(r.paper) + ',' +
               format_decimal(r.legendre) + ',' + format_decimal(r.brute_force) + ',' +
               format_decimal(r.paper_deviation) + ',' + format_decimal(r.legendre_deviation) + '\n';
    }
    return out;
}

}  // namespace mfg::app
