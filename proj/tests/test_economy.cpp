#include <doctest.h>

#include <cmath>
#include <random>

#include "mfg/economy.hpp"
#include "mfg_oracles/oracles.hpp"

using namespace mfg;
using doctest::Approx;

TEST_CASE("u1 and its derivative on both branches") {
    CHECK(u1(0.0) == Approx(0.25));
    CHECK(u1(15.0 / 16.0) == Approx(1.0));
    CHECK(u1(-1.0) == Approx(-2.75));
    CHECK(u1_prime(0.0) == Approx(2.0));
    CHECK(u1_prime(15.0 / 16.0) == Approx(0.5));
    CHECK(u1_prime(-1.0) == Approx(4.0));
}

TEST_CASE("u1 is C1 across the seam and strictly increasing") {
    const double eps = 1e-9;
    CHECK(std::abs(u1(eps) - u1(-eps)) < 1e-7);
    CHECK(std::abs(u1_prime(eps) - u1_prime(-eps)) < 1e-7);
    for (int j = 0; j <= 2000; ++j) {
        const double x = -100.0 + 0.1 * j;
        CHECK(u1_prime(x) > 0.0);
    }
}

TEST_CASE("production and depreciation of the benchmark") {
    const Economy e = Economy::benchmark();
    auto p = e.production(2.0, 1.0);
    CHECK(p.theta == Approx(2.0));
    CHECK(p.xi == Approx(0.2));
    CHECK(p.f == Approx(2.2));
    p = e.production(0.0, 7.0);
    CHECK(p.theta == 0.0);
    CHECK(p.xi == 0.0);
    CHECK(p.f == 0.0);
    p = e.production(1.0, 0.0);
    CHECK(p.f == Approx(1.0));
    CHECK(p.xi == Approx(0.1));

    CHECK(e.depreciation(2.0, 1.0) == Approx(-1.0));
    CHECK(e.depreciation(0.0, 3.0) == 0.0);
    CHECK(e.depreciation(-1.0, 3.0) == Approx(0.5));

    // F = Theta + p Xi for other coefficients too.
    const Economy other{2.0, 0.3, 0.1, ConsumptionLaw::PaperLiteral};
    const auto q = other.production(1.5, 2.5);
    CHECK(q.f == Approx(q.theta + 2.5 * q.xi));
}

TEST_CASE("economy validation rejects negative coefficients") {
    Economy e = Economy::benchmark();
    CHECK_NOTHROW(e.validate());
    e.depreciation_rate = -0.5;
    CHECK_THROWS_AS(e.validate(), DomainError);
    e = Economy::benchmark();
    e.xi_coeff = NAN;
    CHECK_THROWS_AS(e.validate(), DomainError);
}

TEST_CASE("optimal consumption, printed and first-order-exact laws") {
    CHECK(optimal_consumption(2.0, ConsumptionLaw::PaperLiteral) == 0.0);
    CHECK(optimal_consumption(2.0, ConsumptionLaw::LegendreExact) == 0.0);
    CHECK(optimal_consumption(0.0, ConsumptionLaw::PaperLiteral) == Approx(1.0));
    CHECK(optimal_consumption(4.0, ConsumptionLaw::PaperLiteral) == Approx(-3.0 / 64.0));
    CHECK(optimal_consumption(3.0, ConsumptionLaw::PaperLiteral) == Approx(-5.0 / 144.0));
    CHECK(optimal_consumption(3.0, ConsumptionLaw::LegendreExact) == Approx(-0.5));

    // Golden-section maximization of c -> u1(c) - c on [-10, 10].
    const auto oracle = mfg::oracles::golden_section_max(
        [](mfg::oracles::Real c) { return mfg::oracles::utility_u1(c) - c; }, -10.0L, 10.0L, 1e-10L);
    const double brute = static_cast<double>(oracle.argmax);
    CHECK(std::abs(brute - 0.1875) < 1e-8);
    CHECK(optimal_consumption(1.0, ConsumptionLaw::LegendreExact) == Approx(0.1875).epsilon(1e-14));
}

TEST_CASE("LegendreExact rejects nonpositive q_a") {
    CHECK_THROWS_AS(optimal_consumption(0.0, ConsumptionLaw::LegendreExact), DomainError);
    CHECK_THROWS_AS(optimal_consumption(-1.0, ConsumptionLaw::LegendreExact), DomainError);
    CHECK_THROWS_AS(optimal_consumption_slope(0.0, ConsumptionLaw::LegendreExact), DomainError);
    CHECK_NOTHROW(optimal_consumption(-1.0, ConsumptionLaw::PaperLiteral));
}

TEST_CASE("LegendreExact satisfies the first-order condition") {
    for (int j = 0; j <= 1000; ++j) {
        const double qa = 0.05 + (50.0 - 0.05) * j / 1000.0;
        const double c = optimal_consumption(qa, ConsumptionLaw::LegendreExact);
        CHECK(std::abs(u1_prime(c) - qa) < 1e-10);
    }
}

TEST_CASE("c* is continuous at the q_a = 2 seam in both laws") {
    for (ConsumptionLaw law : {ConsumptionLaw::PaperLiteral, ConsumptionLaw::LegendreExact}) {
        CHECK(std::abs(optimal_consumption(2.0 - 1e-9, law)) < 1e-8);
        CHECK(std::abs(optimal_consumption(2.0 + 1e-9, law)) < 1e-8);
    }
    // The q_a < 2 branch slope is used exactly at the kink.
    CHECK(optimal_consumption_slope(2.0, ConsumptionLaw::PaperLiteral) == Approx(-0.5));
    CHECK(optimal_consumption_slope(2.0, ConsumptionLaw::LegendreExact) == Approx(-1.0 / 16.0));
}

TEST_CASE("Legendre guard floors q_a inside the feedback law only") {
    const Economy e = Economy::benchmark(ConsumptionLaw::LegendreExact);
    const double at_floor = optimal_consumption(kLegendreQaFloor, ConsumptionLaw::LegendreExact);
    CHECK(e.feedback_consumption(0.0) == at_floor);
    CHECK(e.feedback_consumption(-3.0) == at_floor);
    CHECK(e.feedback_consumption_slope(1e-4) == 0.0);
    CHECK(e.feedback_consumption(0.5) == optimal_consumption(0.5, ConsumptionLaw::LegendreExact));
}

TEST_CASE("optimal investment maximizes the quadratic investment term") {
    CHECK(optimal_investment(1.0, 1.0, 1.0) == 0.0);
    CHECK(optimal_investment(0.0, 0.0, 5.0) == 0.0);
    const auto brute = mfg::oracles::grid_max(
        [](mfg::oracles::Real i) { return (-2.0L + 3.0L) * i - i * i / 2.0L; }, -10.0L, 10.0L, 200000);
    CHECK(std::abs(static_cast<double>(brute.argmax) - 1.0) < 1e-4);
    CHECK(optimal_investment(1.0, 3.0, 2.0) == Approx(1.0));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int n = 0; n < 100; ++n) {
        const double qa = d(rng), qk = d(rng), p = d(rng), alpha = d(rng);
        CHECK(optimal_investment(alpha * qa, alpha * qk, p) ==
              Approx(alpha * optimal_investment(qa, qk, p)).epsilon(1e-12));
    }
}

TEST_CASE("hamiltonian term-by-term values") {
    const Economy paper = Economy::benchmark(ConsumptionLaw::PaperLiteral);
    CHECK(paper.hamiltonian(0.0, 0.0, 0.0, 0.0, 1.0) == Approx(0.5 + std::sqrt(17.0) / 4.0));
    for (ConsumptionLaw law : {ConsumptionLaw::PaperLiteral, ConsumptionLaw::LegendreExact}) {
        const Economy e = Economy::benchmark(law);
        CHECK(e.hamiltonian(0.0, 0.0, 2.0, 0.0, 0.0) == Approx(0.75));
    }
}

TEST_CASE("hamiltonian is the supremum of the pre-Hamiltonian (LegendreExact)") {
    const Economy e = Economy::benchmark(ConsumptionLaw::LegendreExact);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
    for (int n = 0; n < 20; ++n) {
        const double a = draw(-1, 2), k = draw(-1, 2), qa = draw(0.1, 10), qk = draw(-2, 4),
                     p = draw(0, 2);
        const double H = e.hamiltonian(a, k, qa, qk, p);
        double best = -INFINITY;
        for (int s = 0; s < 1000; ++s) {
            const ControlPair u{draw(-20, 120), draw(-40, 40)};
            const double h = e.pre_hamiltonian(a, k, u, qa, qk, p);
            CHECK(h <= H + 1e-12);
            best = std::max(best, h);
        }
        // Closed-form maximizer attains H.
        const ControlPair star = e.feedback_controls(qa, qk, p);
        CHECK(e.pre_hamiltonian(a, k, star, qa, qk, p) == Approx(H).epsilon(1e-12));
        CHECK(best <= H);
    }
}

TEST_CASE("hamiltonian gradient against central differences") {
    for (ConsumptionLaw law : {ConsumptionLaw::PaperLiteral, ConsumptionLaw::LegendreExact}) {
        const Economy e = Economy::benchmark(law);
        const double h = 1e-6;
        auto fd_check = [&](double a, double k, double qa, double qk, double p) {
            const HamiltonianGradient g = e.hamiltonian_grad(a, k, qa, qk, p);
            using mfg::oracles::central_difference;
            using mfg::oracles::relative_error;
            CHECK(relative_error(central_difference([&](double x) { return e.hamiltonian(x, k, qa, qk, p); }, a, h), g.d_a) < 1e-6);
            CHECK(relative_error(central_difference([&](double x) { return e.hamiltonian(a, x, qa, qk, p); }, k, h), g.d_k) < 1e-6);
            CHECK(relative_error(central_difference([&](double x) { return e.hamiltonian(a, k, x, qk, p); }, qa, h), g.d_qa) < 1e-6);
            CHECK(relative_error(central_difference([&](double x) { return e.hamiltonian(a, k, qa, x, p); }, qk, h), g.d_qk) < 1e-6);
        };
        fd_check(1, 1, 1, 1, 1);

        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int accepted = 0;
        while (accepted < 100) {
            const double a = -2 + 5 * unit(rng), k = -2 + 5 * unit(rng);
            const double qa = 0.1 + 4.9 * unit(rng), qk = -2 + 7 * unit(rng), p = 3 * unit(rng);
            if (std::abs(qa - 2.0) < 1e-3 || std::abs(a) < 1e-3 || std::abs(k) < 1e-3) continue;
            fd_check(a, k, qa, qk, p);
            ++accepted;
        }
    }
}

TEST_CASE("hamiltonian gradient special values") {
    const Economy e = Economy::benchmark();
    CHECK(e.hamiltonian_grad(0.3, 2.0, 0.0, 0.0, 1.7).d_qk == Approx(-1.0));
    CHECK(e.hamiltonian_grad(15.0 / 16.0, 1.0, 1.0, 1.0, 1.0).d_a == Approx(0.5));
    // Envelope: under LegendreExact the c* chain-rule terms cancel.
    const Economy le = Economy::benchmark(ConsumptionLaw::LegendreExact);
    const double qa = 0.7, qk = 0.4, p = 1.3, k = 1.1;
    const double c = le.feedback_consumption(qa);
    CHECK(le.hamiltonian_grad(1.0, k, qa, qk, p).d_qa ==
          Approx(le.production(k, p).f - p * optimal_investment(qa, qk, p) - c).epsilon(1e-12));
}

TEST_CASE("consumption law names round-trip") {
    for (ConsumptionLaw law : {ConsumptionLaw::PaperLiteral, ConsumptionLaw::LegendreExact}) {
        CHECK(parse_consumption_law(to_string(law)) == law);
    }
    CHECK_THROWS(parse_consumption_law("nonsense"));
}
