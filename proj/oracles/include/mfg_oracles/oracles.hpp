#pragma once

// Brute-force references used to check the closed-form paths in mfg_core.
// Nothing here calls the quantities it is meant to verify.

#include <cmath>
#include <functional>

namespace mfg::oracles {

/// Extended precision keeps flat maxima resolvable to ~1e-8 in the argument.
using Real = long double;

struct Extremum {
    Real argmax = 0.0L;
    Real value = 0.0L;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
Extremum golden_section_max(const std::function<Real(Real)>& f, Real lo, Real hi,
                            Real tol = 1e-12L);

/// Maximum over `points + 1` equispaced samples of [lo, hi].
Extremum grid_max(const std::function<Real(Real)>& f, Real lo, Real hi, int points);

/// The single-good utility, re-derived in extended precision.
Real utility_u1(Real x);

/// argmax_c u1(c) - q_a c by golden section over a bracket wide enough for q_a > 0.
Real brute_force_consumption(Real q_a);

/// (f(x + h) - f(x - h)) / 2h.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// |a - b| / max(1, |b|).
inline double relative_error(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

/// err(h) / err(h / 2) given a scalar error functional of the step count.
double self_convergence_ratio(const std::function<double(int)>& error_at_steps, int steps);

}  // namespace mfg::oracles
