#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfg/app/run_config.hpp"

namespace mfg::app {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;      // the measured quantity
    double threshold = 0.0;  // what it was compared against
    std::string detail;
};

/// LegendreExact c* against golden-section maximization of c -> u1(c) - q_a c.
CheckResult check_consumption_oracle(int samples = 100, double qa_min = 0.1, double qa_max = 10.0,
                                     double tol = 1e-6);

/// Analytic gradient against central differences of the Hamiltonian at random
/// points with q_a in [0.1, 5] away from the q_a = 2 seam; error is |fd - an| / max(1, |an|).
CheckResult check_gradient(const Economy& economy, double fd_step, int points = 100,
                           double tol = 1e-6, std::uint64_t seed = 20240611);

/// Hamiltonian dominates the pre-Hamiltonian at sampled control pairs and is
/// attained to the sampling resolution (LegendreExact only).
CheckResult check_hamiltonian_sup(const Economy& economy, int points = 50, int controls = 1000,
                                  std::uint64_t seed = 7);

/// err(dt) / err(dt / 2) against a dt / 64 reference on k' = -delta k.
CheckResult check_rk4_order_decoupled(double depreciation_rate = 0.5, int base_steps = 4);

/// Same ratio on a full Hamiltonian trajectory; base_steps stays node-aligned with the curve.
CheckResult check_rk4_order_trajectory(const Economy& economy, const PriceCurve& price,
                                       const AgentState& initial, int base_steps);

/// Node exactness, constant and cubic reproduction of the price spline.
CheckResult check_spline_knots();

/// Transport-equation residual for phi = b(t) a k at the given step count.
CheckResult check_transport(const Economy& economy, const Population& population,
                            const PriceCurve& price, const ShootingConfig& shooting, int n_steps,
                            double tol = 1e-6);

/// Shooting residuals below residual_tol and q_a, q_k >= -1e-8 at every node.
CheckResult check_costates(std::span<const Trajectory> trajectories, double residual_tol);

/// The suite behind `validate`.
std::vector<CheckResult> run_validation(const RunConfig& config);

std::string format_check_table(const std::vector<CheckResult>& results);

}  // namespace mfg::app
