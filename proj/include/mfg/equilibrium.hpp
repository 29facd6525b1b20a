#pragma once

#include <span>
#include <string>
#include <vector>

#include "mfg/population.hpp"
#include "mfg/shooting.hpp"

namespace mfg {

inline constexpr double kPriceFloor = 1e-6;

struct EquilibriumConfig {
    double mu = 0.8;
    double imbalance_tol = 1e-3;
    int max_price_iters = 200;
    int price_intervals = 16;  // m; the curve has m + 1 samples
    double initial_price = 1.0;
    double price_floor = kPriceFloor;
    int threads = 0;  // 0 selects std::thread::hardware_concurrency()

    void validate() const;
};

struct EquilibriumReport {
    PriceCurve price = PriceCurve::constant(1.0, 3, 1.0);
    std::vector<Trajectory> trajectories;
    std::vector<CostatePair> initial_costates;
    std::vector<double> imbalance_history;  // sup |iota| over nodes, one per evaluated curve
    std::vector<double> step_history;       // sup |Psi(p) - p| over nodes, same indexing
    std::vector<double> final_imbalance;    // iota at the m + 1 nodes of the final curve
    int iterations = 0;                     // price updates applied
    bool converged = false;                 // sup |Psi(p) - p| < mu * imbalance_tol
    bool market_cleared = false;            // sup |iota| < imbalance_tol at every node
    std::string failure;                    // non-empty when an agent solve aborted the loop
};

/// (1/N) sum_n [i*_n - Xi(k_n, p)]: positive when demand for capital exceeds supply.
double imbalance(double t, const PriceCurve& price, std::span<const AgentState> agents,
                 const Economy& economy);

/// iota at every price node, read from the trajectory nodes aligned with it.
std::vector<double> nodal_imbalance(const PriceCurve& price, std::span<const Trajectory> trajectories,
                                    const Economy& economy);

/// samples'[i] = max(price_floor, samples[i] + mu iota[i]).
PriceCurve price_step(const PriceCurve& curve, std::span<const double> iota_at_nodes, double mu,
                      double price_floor = kPriceFloor);

struct AgentSolves {
    std::vector<ShootingResult> results;
};

/// Runs the N shooting problems under one price curve, concurrently when threads > 1.
/// Each agent starts from warm_starts[n] when provided.
AgentSolves solve_agents(const Population& population, const PriceCurve& price,
                         const TimeGrid& grid, const Economy& economy,
                         const ShootingConfig& shooting, std::span<const CostatePair> warm_starts,
                         int threads);

/// Price-adjustment fixed point. The time grid must place a node on every price node.
///
/// Stops once one more price step would move every sample by less than
/// mu * imbalance_tol. Where no sample sits on the price floor this is the same as
/// sup |iota| < imbalance_tol; floor-bound samples only need iota <= imbalance_tol.
///
/// Throws NonConvergence / DivergenceError from agent solves after recording the
/// partial report in `partial` when it is non-null.
EquilibriumReport solve_equilibrium(const Population& population, const Economy& economy,
                                    const TimeGrid& grid, const ShootingConfig& shooting,
                                    const EquilibriumConfig& config,
                                    EquilibriumReport* partial = nullptr);

/// sup_i |Psi(p)_i - p_i|.
double price_step_residual(const PriceCurve& curve, std::span<const double> iota_at_nodes, double mu,
                           double price_floor = kPriceFloor);

/// Node-aligned stride between trajectory steps and price samples.
int nodes_per_price_interval(const TimeGrid& grid, const PriceCurve& price);

}  // namespace mfg
