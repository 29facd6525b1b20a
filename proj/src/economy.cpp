#include "mfg/economy.hpp"

#include <algorithm>
#include <cmath>

namespace mfg {

namespace {

constexpr double kSixteenth = 1.0 / 16.0;

// Stationary point of c -> sqrt(c + 1/16) - q_a c, positive for 0 < q_a < 2.
double sqrt_branch(double q_a) { return (4.0 - q_a * q_a) / (16.0 * q_a * q_a); }
double sqrt_branch_slope(double q_a) { return -1.0 / (2.0 * q_a * q_a * q_a); }

// Stationary point of c -> 5/4 - (1 - c)^2 - q_a c, nonpositive for q_a >= 2.
double quadratic_branch(double q_a) { return (2.0 - q_a) / 2.0; }
constexpr double kQuadraticBranchSlope = -0.5;

}  // namespace

std::string_view to_string(ConsumptionLaw law) {
    return law == ConsumptionLaw::PaperLiteral ? "paper" : "legendre";
}

ConsumptionLaw parse_consumption_law(std::string_view name) {
    if (name == "paper" || name == "PaperLiteral") return ConsumptionLaw::PaperLiteral;
    if (name == "legendre" || name == "LegendreExact") return ConsumptionLaw::LegendreExact;
    throw std::invalid_argument("unknown consumption law '" + std::string(name) +
                                "' (expected paper or legendre)");
}

double u1(double x) {
    if (x > 0.0) return std::sqrt(x + kSixteenth);
    const double d = 1.0 - x;
    return 1.25 - d * d;
}

double u1_prime(double x) {
    if (x > 0.0) return 0.5 / std::sqrt(x + kSixteenth);
    return 2.0 * (1.0 - x);
}

double optimal_consumption(double q_a, ConsumptionLaw law) {
    if (law == ConsumptionLaw::PaperLiteral) {
        return q_a > 2.0 ? sqrt_branch(q_a) : quadratic_branch(q_a);
    }
    if (!(q_a > 0.0)) {
        throw DomainError("LegendreExact consumption requires q_a > 0, got " + std::to_string(q_a));
    }
    return q_a <= 2.0 ? sqrt_branch(q_a) : quadratic_branch(q_a);
}

double optimal_consumption_slope(double q_a, ConsumptionLaw law) {
    if (law == ConsumptionLaw::PaperLiteral) {
        return q_a > 2.0 ? sqrt_branch_slope(q_a) : kQuadraticBranchSlope;
    }
    if (!(q_a > 0.0)) {
        throw DomainError("LegendreExact consumption requires q_a > 0, got " + std::to_string(q_a));
    }
    return q_a <= 2.0 ? sqrt_branch_slope(q_a) : kQuadraticBranchSlope;
}

double optimal_investment(double q_a, double q_k, double price) { return q_k - price * q_a; }

void Economy::validate() const {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError(std::string(name) + " must be finite and >= 0, got " +
                              std::to_string(v));
        }
    };
    check(theta_coeff, "theta_coeff");
    check(xi_coeff, "xi_coeff");
    check(depreciation_rate, "depreciation_rate");
}

Production Economy::production(double k, double price) const {
    Production out;
    out.theta = theta_coeff * k;
    out.xi = xi_coeff * k;
    out.f = out.theta + price * out.xi;
    return out;
}

double Economy::depreciation(double k, double /*price*/) const { return -depreciation_rate * k; }

double Economy::utility(double a, double k, ControlPair controls) const {
    const double i = controls.investment;
    return u1(controls.consumption) + u1(a) + u1(k) - 0.5 * i * i;
}

double Economy::feedback_consumption(double q_a) const {
    if (law == ConsumptionLaw::LegendreExact) {
        return optimal_consumption(std::max(q_a, kLegendreQaFloor), law);
    }
    return optimal_consumption(q_a, law);
}

double Economy::feedback_consumption_slope(double q_a) const {
    if (law == ConsumptionLaw::LegendreExact) {
        if (q_a < kLegendreQaFloor) return 0.0;
        return optimal_consumption_slope(q_a, law);
    }
    return optimal_consumption_slope(q_a, law);
}

ControlPair Economy::feedback_controls(double q_a, double q_k, double price) const {
    return {feedback_consumption(q_a), optimal_investment(q_a, q_k, price)};
}

double Economy::pre_hamiltonian(double a, double k, ControlPair controls, double q_a, double q_k,
                                double price) const {
    const double f = production(k, price).f;
    const double g = depreciation(k, price);
    return (-controls.consumption - price * controls.investment + f) * q_a +
           (controls.investment + g) * q_k + utility(a, k, controls);
}

double Economy::hamiltonian(double a, double k, double q_a, double q_k, double price) const {
    const double h_a = production(k, price).f * q_a + depreciation(k, price) * q_k + u1(a) + u1(k);
    const double i = optimal_investment(q_a, q_k, price);
    const double h_b = 0.5 * i * i;
    const double c = feedback_consumption(q_a);
    const double h_c = -q_a * c + u1(c);
    return h_a + h_b + h_c;
}

HamiltonianGradient Economy::hamiltonian_grad(double a, double k, double q_a, double q_k,
                                              double price) const {
    const double i = optimal_investment(q_a, q_k, price);
    const double c = feedback_consumption(q_a);
    const double dc = feedback_consumption_slope(q_a);

    HamiltonianGradient g;
    g.d_a = u1_prime(a);
    g.d_k = global_output_dk(price) * q_a + depreciation_dk() * q_k + u1_prime(k);
    // Chain rule on -q_a c*(q_a) + u1(c*(q_a)); the last two terms cancel only
    // where u1'(c*) = q_a.
    g.d_qa = production(k, price).f - price * i - c - q_a * dc + u1_prime(c) * dc;
    g.d_qk = i + depreciation(k, price);
    return g;
}

}  // namespace mfg
