#include "mfg/app/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mfg::app {

namespace {

std::string exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' expects a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long i = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(i);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' expects an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "' expects true/false, got '" + v + "'");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

EquilibriumConfig RunConfig::equilibrium() const {
    EquilibriumConfig c;
    c.mu = mu;
    c.imbalance_tol = imbalance_tol;
    c.max_price_iters = max_price_iters;
    c.price_intervals = price_samples;
    c.initial_price = initial_price;
    c.price_floor = price_floor;
    c.threads = threads;
    return c;
}

void RunConfig::validate() const {
    require(std::isfinite(horizon) && horizon > 0.0, "horizon must be positive");
    require(n_steps >= 1, "n_steps must be >= 1");
    require(agents_side >= 1, "agents_side must be >= 1");
    require(a_range.lo < a_range.hi, "a_min must be < a_max");
    require(k_range.lo < k_range.hi, "k_min must be < k_max");
    try {
        economy().validate();
        shooting.validate();
        equilibrium().validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    require(n_steps % price_samples == 0,
            "n_steps (" + std::to_string(n_steps) + ") must be a multiple of price_samples (" +
                std::to_string(price_samples) + ")");
    require(!output_dir.empty(), "output_dir must not be empty");
}

std::vector<std::pair<std::string, std::string>> RunConfig::to_key_values() const {
    return {
        {"horizon", exact(horizon)},
        {"n_steps", std::to_string(n_steps)},
        {"agents_side", std::to_string(agents_side)},
        {"a_min", exact(a_range.lo)},
        {"a_max", exact(a_range.hi)},
        {"k_min", exact(k_range.lo)},
        {"k_max", exact(k_range.hi)},
        {"theta_coeff", exact(theta_coeff)},
        {"xi_coeff", exact(xi_coeff)},
        {"depreciation_rate", exact(depreciation_rate)},
        {"consumption_law", std::string(to_string(consumption_law))},
        {"price_samples", std::to_string(price_samples)},
        {"mu", exact(mu)},
        {"imbalance_tol", exact(imbalance_tol)},
        {"max_price_iters", std::to_string(max_price_iters)},
        {"initial_price", exact(initial_price)},
        {"price_floor", exact(price_floor)},
        {"threads", std::to_string(threads)},
        {"residual_tol", exact(shooting.residual_tol)},
        {"max_newton_iters", std::to_string(shooting.max_newton_iters)},
        {"fd_step", exact(shooting.fd_step)},
        {"damping_min", exact(shooting.damping_min)},
        {"initial_qa", exact(shooting.initial_guess.q_a)},
        {"initial_qk", exact(shooting.initial_guess.q_k)},
        {"output_dir", output_dir},
        {"emit_plot_data", emit_plot_data ? "true" : "false"},
    };
}

RunConfig RunConfig::from_key_values(const std::map<std::string, std::string>& values) {
    RunConfig c;
    for (const auto& [key, v] : values) {
        if (key == "horizon") c.horizon = to_double(key, v);
        else if (key == "n_steps") c.n_steps = to_int(key, v);
        else if (key == "agents_side") c.agents_side = to_int(key, v);
        else if (key == "a_min") c.a_range.lo = to_double(key, v);
        else if (key == "a_max") c.a_range.hi = to_double(key, v);
        else if (key == "k_min") c.k_range.lo = to_double(key, v);
        else if (key == "k_max") c.k_range.hi = to_double(key, v);
        else if (key == "theta_coeff") c.theta_coeff = to_double(key, v);
        else if (key == "xi_coeff") c.xi_coeff = to_double(key, v);
        else if (key == "depreciation_rate") c.depreciation_rate = to_double(key, v);
        else if (key == "consumption_law") {
            try {
                c.consumption_law = parse_consumption_law(v);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
        else if (key == "price_samples") c.price_samples = to_int(key, v);
        else if (key == "mu") c.mu = to_double(key, v);
        else if (key == "imbalance_tol") c.imbalance_tol = to_double(key, v);
        else if (key == "max_price_iters") c.max_price_iters = to_int(key, v);
        else if (key == "initial_price") c.initial_price = to_double(key, v);
        else if (key == "price_floor") c.price_floor = to_double(key, v);
        else if (key == "threads") c.threads = to_int(key, v);
        else if (key == "residual_tol") c.shooting.residual_tol = to_double(key, v);
        else if (key == "max_newton_iters") c.shooting.max_newton_iters = to_int(key, v);
        else if (key == "fd_step") c.shooting.fd_step = to_double(key, v);
        else if (key == "damping_min") c.shooting.damping_min = to_double(key, v);
        else if (key == "initial_qa") c.shooting.initial_guess.q_a = to_double(key, v);
        else if (key == "initial_qk") c.shooting.initial_guess.q_k = to_double(key, v);
        else if (key == "output_dir") c.output_dir = v;
        else if (key == "emit_plot_data") c.emit_plot_data = to_bool(key, v);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return c;
}

std::map<std::string, std::string> parse_key_value_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    if (trim(text).starts_with("{")) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("invalid JSON in '" + path + "': " + e.what());
        }
        std::map<std::string, std::string> values;
        const std::string prefix = "config.";
        for (const auto& [key, value] : doc.items()) {
            if (!key.starts_with(prefix)) continue;
            values[key.substr(prefix.size())] =
                value.is_string() ? value.get<std::string>() : value.dump();
        }
        if (values.empty()) throw ConfigError("'" + path + "' carries no config.* keys");
        return RunConfig::from_key_values(values);
    }
    return RunConfig::from_key_values(parse_key_value_text(text));
}

std::string to_key_value_text(const RunConfig& config) {
    std::string out;
    for (const auto& [k, v] : config.to_key_values()) out += k + " = " + v + "\n";
    return out;
}

}  // namespace mfg::app
