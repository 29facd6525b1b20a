#include "mfg/integrator.hpp"

namespace mfg {

TimeGrid::TimeGrid(double horizon_, int steps_) : horizon(horizon_), steps(steps_) {
    if (steps < 1) throw std::invalid_argument("time grid needs at least one step");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("time grid horizon must be positive");
    }
}

Rates rhs(const AgentState& s, double t, const PriceCurve& price, const Economy& economy) {
    const double p = price(t);
    const ControlPair u = economy.feedback_controls(s.q_a, s.q_k, p);
    const double f = economy.production(s.k, p).f;
    const double g = economy.depreciation(s.k, p);
    const double dh_dk = economy.global_output_dk(p) * s.q_a + economy.depreciation_dk() * s.q_k +
                         u1_prime(s.k);
    return {f - p * u.investment - u.consumption, u.investment + g, -u1_prime(s.a), -dh_dk};
}

Trajectory integrate(const AgentState& initial, const PriceCurve& price, const TimeGrid& grid,
                     const Economy& economy) {
    Trajectory out;
    out.grid = grid;
    out.states = rk4_states(initial, grid, [&](const AgentState& s, double t) {
        return rhs(s, t, price, economy);
    });
    out.controls.reserve(out.states.size());
    for (int j = 0; j < grid.nodes(); ++j) {
        const AgentState& s = out.states[static_cast<std::size_t>(j)];
        out.controls.push_back(economy.feedback_controls(s.q_a, s.q_k, price(grid.time(j))));
    }
    return out;
}

AgentState integrate_to_horizon(const AgentState& initial, const PriceCurve& price,
                                const TimeGrid& grid, const Economy& economy) {
    return rk4_states(initial, grid, [&](const AgentState& s, double t) {
               return rhs(s, t, price, economy);
           }).back();
}

}  // namespace mfg
