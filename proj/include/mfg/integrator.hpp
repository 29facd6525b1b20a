#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfg/economy.hpp"
#include "mfg/price_curve.hpp"

namespace mfg {

class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kDivergenceBound = 1e12;

struct TimeGrid {
    double horizon = 1.0;
    int steps = 1;

    TimeGrid() = default;
    TimeGrid(double horizon, int steps);

    double dt() const { return horizon / steps; }
    double time(int node) const { return node == steps ? horizon : node * dt(); }
    int nodes() const { return steps + 1; }

    bool operator==(const TimeGrid&) const = default;
};

struct AgentState {
    double a = 0.0;
    double k = 0.0;
    double q_a = 0.0;
    double q_k = 0.0;

    std::array<double, 4> as_array() const { return {a, k, q_a, q_k}; }
    static AgentState from_array(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }
    CostatePair costates() const { return {q_a, q_k}; }
};

struct Trajectory {
    TimeGrid grid;
    std::vector<AgentState> states;
    std::vector<ControlPair> controls;
};

using Rates = std::array<double, 4>;

/// Hamiltonian vector field: state rates follow the microeconomic dynamics
/// under the feedback controls, co-state rates are -dH/da and -dH/dk.
Rates rhs(const AgentState& state, double t, const PriceCurve& price, const Economy& economy);

/// Classical fixed-step RK4 for an arbitrary 4-dimensional field f(state, t).
/// Throws DivergenceError once any component exceeds kDivergenceBound.
template <class Field>
std::vector<AgentState> rk4_states(const AgentState& initial, const TimeGrid& grid, Field&& field) {
    std::vector<AgentState> out;
    out.reserve(static_cast<std::size_t>(grid.nodes()));
    out.push_back(initial);

    const double dt = grid.dt();
    std::array<double, 4> y = initial.as_array();
    auto axpy = [](const std::array<double, 4>& base, double s, const Rates& r) {
        return std::array<double, 4>{base[0] + s * r[0], base[1] + s * r[1], base[2] + s * r[2],
                                     base[3] + s * r[3]};
    };
    for (int j = 0; j < grid.steps; ++j) {
        const double t = grid.time(j);
        const double t_half = t + 0.5 * dt;
        const double t_next = grid.time(j + 1);
        const Rates k1 = field(AgentState::from_array(y), t);
        const Rates k2 = field(AgentState::from_array(axpy(y, 0.5 * dt, k1)), t_half);
        const Rates k3 = field(AgentState::from_array(axpy(y, 0.5 * dt, k2)), t_half);
        const Rates k4 = field(AgentState::from_array(axpy(y, dt, k3)), t_next);
        for (int c = 0; c < 4; ++c) {
            y[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            if (!(std::abs(y[c]) <= kDivergenceBound)) {
                throw DivergenceError("trajectory diverged at t = " + std::to_string(t_next));
            }
        }
        out.push_back(AgentState::from_array(y));
    }
    return out;
}

Trajectory integrate(const AgentState& initial, const PriceCurve& price, const TimeGrid& grid,
                     const Economy& economy);

/// Final state only; avoids storing the path.
AgentState integrate_to_horizon(const AgentState& initial, const PriceCurve& price,
                                const TimeGrid& grid, const Economy& economy);

}  // namespace mfg
