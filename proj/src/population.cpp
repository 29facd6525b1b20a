#include "mfg/population.hpp"

#include <cmath>
#include <stdexcept>

namespace mfg {

Population::Population(std::vector<InitialPoint> points) : initial_points(std::move(points)) {
    if (initial_points.empty()) throw std::invalid_argument("population must be non-empty");
}

std::vector<double> Population::weights() const {
    return std::vector<double>(initial_points.size(), weight());
}

Population grid_population(int side, Interval a_range, Interval k_range) {
    if (side < 1) throw std::invalid_argument("agents side must be >= 1");
    for (const Interval& r : {a_range, k_range}) {
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
            throw std::invalid_argument("initial-condition ranges must satisfy lo < hi");
        }
    }
    auto node = [side](Interval r, int j) {
        if (side == 1) return 0.5 * (r.lo + r.hi);
        if (j == side - 1) return r.hi;
        return r.lo + (r.hi - r.lo) * j / (side - 1);
    };
    std::vector<InitialPoint> points;
    points.reserve(static_cast<std::size_t>(side) * side);
    for (int ia = 0; ia < side; ++ia) {
        for (int ik = 0; ik < side; ++ik) {
            points.push_back({node(a_range, ia), node(k_range, ik)});
        }
    }
    return Population(std::move(points));
}

AveragesSeries averages(std::span<const Trajectory> trajectories, const Population& population) {
    if (trajectories.size() != population.size()) {
        throw std::invalid_argument("trajectory count does not match population size");
    }
    AveragesSeries out;
    out.grid = trajectories.front().grid;
    const auto nodes = static_cast<std::size_t>(out.grid.nodes());
    out.a_bar.assign(nodes, 0.0);
    out.k_bar.assign(nodes, 0.0);
    out.c_bar.assign(nodes, 0.0);
    out.i_bar.assign(nodes, 0.0);

    const double w = population.weight();
    for (const Trajectory& tr : trajectories) {
        if (!(tr.grid == out.grid) || tr.states.size() != nodes || tr.controls.size() != nodes) {
            throw std::invalid_argument("trajectories do not share one time grid");
        }
        for (std::size_t j = 0; j < nodes; ++j) {
            out.a_bar[j] += w * tr.states[j].a;
            out.k_bar[j] += w * tr.states[j].k;
            out.c_bar[j] += w * tr.controls[j].consumption;
            out.i_bar[j] += w * tr.controls[j].investment;
        }
    }
    return out;
}

double transport_residual(const TestFunction& phi, std::span<const Trajectory> trajectories,
                          const Population& population, const PriceCurve& price,
                          const Economy& economy) {
    if (trajectories.size() != population.size()) {
        throw std::invalid_argument("trajectory count does not match population size");
    }
    double total = 0.0;
    const double w = population.weight();
    for (const Trajectory& tr : trajectories) {
        const TimeGrid& grid = tr.grid;
        double integral = 0.0;
        for (int j = 0; j < grid.nodes(); ++j) {
            const AgentState& s = tr.states[static_cast<std::size_t>(j)];
            const double t = grid.time(j);
            const Rates v = rhs(s, t, price, economy);
            const double integrand =
                phi.d_t(s.a, s.k, t) + phi.d_a(s.a, s.k, t) * v[0] + phi.d_k(s.a, s.k, t) * v[1];
            const double trapezoid_weight = (j == 0 || j == grid.steps) ? 0.5 : 1.0;
            integral += trapezoid_weight * integrand;
        }
        total += w * integral * grid.dt();
    }
    return total;
}

double Bump::operator()(double t) const {
    const double x = (t - centre) / half_width;
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

double Bump::derivative(double t) const {
    const double x = (t - centre) / half_width;
    if (std::abs(x) >= 1.0) return 0.0;
    const double d = 1.0 - x * x;
    return (*this)(t) * (-2.0 * x / (d * d)) / half_width;
}

}  // namespace mfg
