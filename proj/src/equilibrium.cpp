#include "mfg/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace mfg {

void EquilibriumConfig::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be positive");
    if (!(imbalance_tol > 0.0)) throw std::invalid_argument("imbalance_tol must be positive");
    if (max_price_iters < 0) throw std::invalid_argument("max_price_iters must be >= 0");
    if (price_intervals < 3) throw std::invalid_argument("price_samples must be >= 3");
    if (!(initial_price >= price_floor)) {
        throw std::invalid_argument("initial_price must be >= price_floor");
    }
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

double imbalance(double t, const PriceCurve& price, std::span<const AgentState> agents,
                 const Economy& economy) {
    const double p = price(t);
    double sum = 0.0;
    for (const AgentState& s : agents) {
        sum += optimal_investment(s.q_a, s.q_k, p) - economy.production(s.k, p).xi;
    }
    return sum / static_cast<double>(agents.size());
}

int nodes_per_price_interval(const TimeGrid& grid, const PriceCurve& price) {
    const int m = price.intervals();
    if (grid.steps % m != 0 || std::abs(grid.horizon - price.horizon()) > 1e-12 * grid.horizon) {
        throw std::invalid_argument("time grid (" + std::to_string(grid.steps) +
                                    " steps) must refine the " + std::to_string(m) +
                                    " price intervals on the same horizon");
    }
    return grid.steps / m;
}

std::vector<double> nodal_imbalance(const PriceCurve& price, std::span<const Trajectory> trajectories,
                                    const Economy& economy) {
    const int stride = nodes_per_price_interval(trajectories.front().grid, price);
    std::vector<double> iota;
    std::vector<AgentState> at_node(trajectories.size());
    for (int i = 0; i <= price.intervals(); ++i) {
        const auto j = static_cast<std::size_t>(i * stride);
        for (std::size_t n = 0; n < trajectories.size(); ++n) at_node[n] = trajectories[n].states[j];
        iota.push_back(imbalance(price.node_time(i), price, at_node, economy));
    }
    return iota;
}

PriceCurve price_step(const PriceCurve& curve, std::span<const double> iota, double mu,
                      double price_floor) {
    const auto samples = curve.samples();
    if (iota.size() != samples.size()) {
        throw std::invalid_argument("imbalance must be given at every price node");
    }
    std::vector<double> next(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        next[i] = std::max(price_floor, samples[i] + mu * iota[i]);
    }
    return PriceCurve(curve.horizon(), std::move(next));
}

double price_step_residual(const PriceCurve& curve, std::span<const double> iota, double mu,
                           double price_floor) {
    const PriceCurve next = price_step(curve, iota, mu, price_floor);
    double step = 0.0;
    for (std::size_t i = 0; i < next.samples().size(); ++i) {
        step = std::max(step, std::abs(next.samples()[i] - curve.samples()[i]));
    }
    return step;
}

AgentSolves solve_agents(const Population& population, const PriceCurve& price,
                         const TimeGrid& grid, const Economy& economy,
                         const ShootingConfig& shooting, std::span<const CostatePair> warm_starts,
                         int threads) {
    const std::size_t n = population.size();
    AgentSolves out;
    out.results.resize(n);

    std::exception_ptr first_error;
    std::size_t first_error_agent = n;
    std::mutex error_mutex;

    auto solve_one = [&](std::size_t idx) {
        ShootingConfig cfg = shooting;
        if (idx < warm_starts.size()) cfg.initial_guess = warm_starts[idx];
        const InitialPoint& p0 = population.initial_points[idx];
        try {
            out.results[idx] = solve_costates(p0.a0, p0.k0, price, grid, economy, cfg);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            // Keep the lowest agent index so failures are reported deterministically.
            if (idx < first_error_agent) {
                first_error_agent = idx;
                first_error = std::current_exception();
            }
        }
    };

    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t idx = 0; idx < n; ++idx) solve_one(idx);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t idx = w; idx < n; idx += workers) solve_one(idx);
            });
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

EquilibriumReport solve_equilibrium(const Population& population, const Economy& economy,
                                    const TimeGrid& grid, const ShootingConfig& shooting,
                                    const EquilibriumConfig& config, EquilibriumReport* partial) {
    economy.validate();
    shooting.validate();
    config.validate();

    EquilibriumReport report;
    report.price = PriceCurve::constant(grid.horizon, config.price_intervals, config.initial_price);
    nodes_per_price_interval(grid, report.price);

    std::vector<CostatePair> warm;
    for (;;) {
        AgentSolves solves;
        try {
            solves = solve_agents(population, report.price, grid, economy, shooting, warm,
                                  config.threads);
        } catch (const std::exception& e) {
            report.failure = e.what();
            report.converged = false;
            if (partial) *partial = report;
            throw;
        }

        report.trajectories.clear();
        report.initial_costates.clear();
        for (ShootingResult& r : solves.results) {
            report.initial_costates.push_back(r.initial_costates);
            report.trajectories.push_back(std::move(r.trajectory));
        }
        warm = report.initial_costates;

        report.final_imbalance = nodal_imbalance(report.price, report.trajectories, economy);
        double sup = 0.0;
        for (double v : report.final_imbalance) sup = std::max(sup, std::abs(v));
        report.imbalance_history.push_back(sup);
        report.market_cleared = sup < config.imbalance_tol;

        PriceCurve next =
            price_step(report.price, report.final_imbalance, config.mu, config.price_floor);
        const double step =
            price_step_residual(report.price, report.final_imbalance, config.mu, config.price_floor);
        report.step_history.push_back(step);

        if (step < config.mu * config.imbalance_tol) {
            report.converged = true;
            break;
        }
        if (report.iterations >= config.max_price_iters) break;

        report.price = std::move(next);
        ++report.iterations;
    }
    return report;
}

}  // namespace mfg
