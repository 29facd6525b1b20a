#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mfg/integrator.hpp"

namespace mfg {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct InitialPoint {
    double a0 = 0.0;
    double k0 = 0.0;
};

/// Empirical measure (1/N) sum of Dirac masses at the initial points.
struct Population {
    std::vector<InitialPoint> initial_points;

    explicit Population(std::vector<InitialPoint> points);

    std::size_t size() const { return initial_points.size(); }
    double weight() const { return 1.0 / static_cast<double>(initial_points.size()); }
    std::vector<double> weights() const;
};

/// side^2 points on the tensor grid over a_range x k_range, endpoints included.
/// A single agent sits at the midpoint when side = 1.
Population grid_population(int side, Interval a_range, Interval k_range);

struct AveragesSeries {
    TimeGrid grid;
    std::vector<double> a_bar;
    std::vector<double> k_bar;
    std::vector<double> c_bar;
    std::vector<double> i_bar;
};

/// Node-wise means; throws std::invalid_argument when grids disagree.
AveragesSeries averages(std::span<const Trajectory> trajectories, const Population& population);

/// Test function phi(a, k, t) with its three partial derivatives.
struct TestFunction {
    std::function<double(double, double, double)> value;
    std::function<double(double, double, double)> d_a;
    std::function<double(double, double, double)> d_k;
    std::function<double(double, double, double)> d_t;
};

/// Trapezoidal value of (1/N) sum_n int (d_t phi + d_a phi a' + d_k phi k') dt
/// along each trajectory; velocities come from the Hamiltonian field.
double transport_residual(const TestFunction& test_fn, std::span<const Trajectory> trajectories,
                          const Population& population, const PriceCurve& price,
                          const Economy& economy);

/// exp(1 - 1 / (1 - x^2)) on x = (t - centre) / half_width, zero outside; peak 1.
struct Bump {
    double centre;
    double half_width;

    double operator()(double t) const;
    double derivative(double t) const;
};

}  // namespace mfg
