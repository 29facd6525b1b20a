#include "mfg/shooting.hpp"

#include <algorithm>
#include <cmath>

namespace mfg {

namespace {

double sup_norm(CostatePair q) { return std::max(std::abs(q.q_a), std::abs(q.q_k)); }

}  // namespace

void ShootingConfig::validate() const {
    if (!(residual_tol > 0.0)) throw std::invalid_argument("residual_tol must be positive");
    if (max_newton_iters < 0) throw std::invalid_argument("max_newton_iters must be >= 0");
    if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
    if (!(damping_min > 0.0 && damping_min <= 1.0)) {
        throw std::invalid_argument("damping_min must lie in (0, 1]");
    }
    if (!std::isfinite(initial_guess.q_a) || !std::isfinite(initial_guess.q_k)) {
        throw std::invalid_argument("initial co-state guess must be finite");
    }
}

CostatePair terminal_map(CostatePair q0, double a0, double k0, const PriceCurve& price,
                         const TimeGrid& grid, const Economy& economy) {
    const AgentState end = integrate_to_horizon({a0, k0, q0.q_a, q0.q_k}, price, grid, economy);
    return end.costates();
}

ShootingResult solve_costates(double a0, double k0, const PriceCurve& price, const TimeGrid& grid,
                              const Economy& economy, const ShootingConfig& config) {
    auto residual_at = [&](CostatePair q) {
        return terminal_map(q, a0, k0, price, grid, economy);
    };

    ShootingResult result;
    CostatePair q = config.initial_guess;
    CostatePair r = residual_at(q);
    double norm = sup_norm(r);
    result.residual_history.push_back(norm);

    int iter = 0;
    while (!(norm < config.residual_tol)) {
        if (iter >= config.max_newton_iters) {
            throw NonConvergence("shooting did not converge for agent (" + std::to_string(a0) +
                                     ", " + std::to_string(k0) + ") after " +
                                     std::to_string(iter) + " Newton iterations",
                                 q, norm);
        }
        ++iter;

        const double h = config.fd_step;
        const CostatePair ra = residual_at({q.q_a + h, q.q_k});
        const CostatePair rk = residual_at({q.q_a, q.q_k + h});
        const double j11 = (ra.q_a - r.q_a) / h, j12 = (rk.q_a - r.q_a) / h;
        const double j21 = (ra.q_k - r.q_k) / h, j22 = (rk.q_k - r.q_k) / h;
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || det == 0.0) {
            throw NonConvergence("singular shooting Jacobian", q, norm);
        }
        const double dqa = -(j22 * r.q_a - j12 * r.q_k) / det;
        const double dqk = -(-j21 * r.q_a + j11 * r.q_k) / det;

        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= config.damping_min) {
            const CostatePair trial{q.q_a + lambda * dqa, q.q_k + lambda * dqk};
            CostatePair trial_r;
            try {
                trial_r = residual_at(trial);
            } catch (const DivergenceError&) {
                lambda *= 0.5;
                continue;
            }
            const double trial_norm = sup_norm(trial_r);
            if (trial_norm < norm) {
                q = trial;
                r = trial_r;
                norm = trial_norm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            throw NonConvergence("shooting line search stalled for agent (" + std::to_string(a0) +
                                     ", " + std::to_string(k0) + ")",
                                 q, norm);
        }
        result.residual_history.push_back(norm);
    }

    result.initial_costates = q;
    result.iterations = iter;
    result.residual = norm;
    result.trajectory = integrate({a0, k0, q.q_a, q.q_k}, price, grid, economy);
    return result;
}

}  // namespace mfg
