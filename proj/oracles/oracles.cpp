#include "mfg_oracles/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfg::oracles {

Extremum golden_section_max(const std::function<Real(Real)>& f, Real lo, Real hi, Real tol) {
    const Real inv_phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    Real a = lo, b = hi;
    Real x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    Real f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const Real x = 0.5L * (a + b);
    return {x, f(x)};
}

Extremum grid_max(const std::function<Real(Real)>& f, Real lo, Real hi, int points) {
    if (points < 1) throw std::invalid_argument("grid_max needs at least one interval");
    Extremum best{lo, f(lo)};
    for (int j = 1; j <= points; ++j) {
        const Real x = lo + (hi - lo) * j / points;
        const Real v = f(x);
        if (v > best.value) best = {x, v};
    }
    return best;
}

Real utility_u1(Real x) {
    if (x > 0.0L) return std::sqrt(x + 0.0625L);
    return 1.25L - (1.0L - x) * (1.0L - x);
}

Real brute_force_consumption(Real q_a) {
    auto objective = [q_a](Real c) { return utility_u1(c) - q_a * c; };
    // The objective is concave and decreases beyond these bounds for q_a in (0, 100].
    const Real lo = std::min(-50.0L, -q_a);
    const Real hi = std::max(500.0L, 4.0L / (q_a * q_a));
    return golden_section_max(objective, lo, hi).argmax;
}

double self_convergence_ratio(const std::function<double(int)>& error_at_steps, int steps) {
    return error_at_steps(steps) / error_at_steps(2 * steps);
}

}  // namespace mfg::oracles
