#include <doctest.h>

#include <cmath>
#include <random>

#include "mfg/shooting.hpp"

using namespace mfg;

namespace {
const Economy kEconomy = Economy::benchmark();
const PriceCurve kUnitPrice = PriceCurve::constant(1.0, 16, 1.0);
const TimeGrid kGrid(1.0, 256);

double sup_norm(CostatePair q) { return std::max(std::abs(q.q_a), std::abs(q.q_k)); }
}  // namespace

TEST_CASE("config validation") {
    ShootingConfig c;
    CHECK_NOTHROW(c.validate());
    c.residual_tol = 0.0;
    CHECK_THROWS(c.validate());
    c = {};
    c.damping_min = 2.0;
    CHECK_THROWS(c.validate());
    c = {};
    c.damping_min = 0.0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("terminal map over a degenerate horizon is the identity") {
    const PriceCurve p = PriceCurve::constant(1e-12, 4, 1.0);
    const CostatePair q = terminal_map({0.7, 0.2}, 1.0, 1.0, p, TimeGrid(1e-12, 1), kEconomy);
    CHECK(std::abs(q.q_a - 0.7) < 1e-10);
    CHECK(std::abs(q.q_k - 0.2) < 1e-10);
}

TEST_CASE("terminal map from zero co-states is strictly negative") {
    const CostatePair q = terminal_map({0.0, 0.0}, 1.0, 1.0, kUnitPrice, kGrid, kEconomy);
    CHECK(q.q_a < 0.0);
    CHECK(q.q_k < 0.0);
}

TEST_CASE("benchmark agent: residual, independent re-check and sign of the co-states") {
    const ShootingResult r = solve_costates(1.0, 1.0, kUnitPrice, kGrid, kEconomy, {});
    CHECK(r.residual < 1e-8);
    CHECK(std::abs(r.trajectory.states.back().q_a) < 1e-8);
    CHECK(std::abs(r.trajectory.states.back().q_k) < 1e-8);
    CHECK(sup_norm(terminal_map(r.initial_costates, 1.0, 1.0, kUnitPrice, kGrid, kEconomy)) < 1e-8);
    for (const AgentState& s : r.trajectory.states) {
        CHECK(s.q_a >= -1e-8);
        CHECK(s.q_k >= -1e-8);
    }
    for (std::size_t j = 1; j < r.residual_history.size(); ++j) {
        CHECK(r.residual_history[j] <= r.residual_history[j - 1]);
    }
    CHECK(r.residual_history.size() == static_cast<std::size_t>(r.iterations) + 1);

    ShootingConfig warm;
    warm.initial_guess = r.initial_costates;
    CHECK(solve_costates(1.0, 1.0, kUnitPrice, kGrid, kEconomy, warm).iterations <= 2);
}

TEST_CASE("tiny horizon gives zero initial co-states") {
    const PriceCurve p = PriceCurve::constant(1e-12, 4, 1.0);
    const ShootingResult r = solve_costates(1.0, 1.0, p, TimeGrid(1e-12, 1), kEconomy, {});
    CHECK(sup_norm(r.initial_costates) < 1e-8);
}

TEST_CASE("terminal map Lipschitz estimate") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double L = 0.0;
    for (int n = 0; n < 20; ++n) {
        const CostatePair q{0.2 + 1.5 * u(rng), 0.2 + 1.5 * u(rng)};
        const double ang = 6.283185307179586 * u(rng);
        const CostatePair d{q.q_a + 1e-4 * std::cos(ang), q.q_k + 1e-4 * std::sin(ang)};
        const CostatePair x = terminal_map(q, 1.0, 1.0, kUnitPrice, kGrid, kEconomy);
        const CostatePair y = terminal_map(d, 1.0, 1.0, kUnitPrice, kGrid, kEconomy);
        L = std::max(L, std::hypot(x.q_a - y.q_a, x.q_k - y.q_k) / 1e-4);
    }
    CHECK(L < 1e3);
    CHECK(L > 0.0);
}

TEST_CASE("budget exhaustion raises NonConvergence with the best point") {
    ShootingConfig c;
    c.max_newton_iters = 1;
    c.residual_tol = 1e-14;
    try {
        solve_costates(1.0, 1.0, kUnitPrice, kGrid, kEconomy, c);
        FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
        CHECK(std::isfinite(e.best_residual));
        CHECK(e.best_residual > 0.0);
        CHECK(std::isfinite(e.best_guess.q_a));
    }
}
