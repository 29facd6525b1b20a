#pragma once

#include <stdexcept>
#include <string>

#include "mfg/integrator.hpp"

namespace mfg {

struct ShootingConfig {
    double residual_tol = 1e-8;
    int max_newton_iters = 50;
    double fd_step = 1e-6;
    double damping_min = 1.0 / 64.0;
    CostatePair initial_guess{1.0, 1.0};

    void validate() const;
};

/// Newton budget exhausted or line search stalled. Carries the best point seen.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, CostatePair best, double best_residual)
        : std::runtime_error(what), best_guess(best), best_residual(best_residual) {}

    CostatePair best_guess;
    double best_residual;
};

struct ShootingResult {
    CostatePair initial_costates;
    Trajectory trajectory;
    int iterations = 0;
    double residual = 0.0;                 // sup norm of the terminal co-states
    std::vector<double> residual_history;  // one entry per accepted iterate, starting guess first
};

/// (q_a(0), q_k(0)) -> (q_a(T), q_k(T)) for an agent starting at (a0, k0).
CostatePair terminal_map(CostatePair initial_costates, double a0, double k0, const PriceCurve& price,
                         const TimeGrid& grid, const Economy& economy);

/// Damped Newton on the terminal map with a forward-difference Jacobian.
/// The step is halved until the residual sup norm decreases, down to damping_min.
ShootingResult solve_costates(double a0, double k0, const PriceCurve& price, const TimeGrid& grid,
                              const Economy& economy, const ShootingConfig& config);

}  // namespace mfg
