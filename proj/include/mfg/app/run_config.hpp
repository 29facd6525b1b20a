#pragma once

#include <map>
#include <string>
#include <vector>

#include "mfg/equilibrium.hpp"

namespace mfg::app {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every field defaults to the 25-agent benchmark experiment.
struct RunConfig {
    double horizon = 1.0;
    int n_steps = 256;
    int agents_side = 5;
    Interval a_range{0.5, 1.5};
    Interval k_range{0.5, 1.5};

    double theta_coeff = 1.0;
    double xi_coeff = 0.1;
    double depreciation_rate = 0.5;
    ConsumptionLaw consumption_law = ConsumptionLaw::PaperLiteral;

    int price_samples = 16;  // m intervals, m + 1 samples
    double mu = 0.8;
    double imbalance_tol = 1e-3;
    int max_price_iters = 200;
    double initial_price = 1.0;
    double price_floor = kPriceFloor;
    int threads = 0;

    ShootingConfig shooting;

    std::string output_dir = "mfg_output";
    bool emit_plot_data = false;

    Economy economy() const {
        return Economy{theta_coeff, xi_coeff, depreciation_rate, consumption_law};
    }
    TimeGrid grid() const { return TimeGrid(horizon, n_steps); }
    Population population() const { return grid_population(agents_side, a_range, k_range); }
    EquilibriumConfig equilibrium() const;

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;

    /// Ordered key/value view; values round-trip exactly through from_key_values.
    std::vector<std::pair<std::string, std::string>> to_key_values() const;

    /// Applies known keys on top of the defaults; unknown keys are an error.
    static RunConfig from_key_values(const std::map<std::string, std::string>& values);
};

/// Parses `key = value` lines; `#` starts a comment; blank lines are ignored.
std::map<std::string, std::string> parse_key_value_text(const std::string& text);

/// Reads a key-value config file, or the `config.*` echo inside a report.json.
RunConfig load_config_file(const std::string& path);

std::string to_key_value_text(const RunConfig& config);

}  // namespace mfg::app
