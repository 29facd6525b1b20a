#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mfg {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Rule for the optimal consumption c*(q_a).
///
/// `PaperLiteral` keeps the printed branch assignment of the model problem:
/// the square-root stationary point is used for q_a > 2 and the quadratic one
/// for q_a <= 2. `LegendreExact` swaps the branches so that u1'(c*) = q_a holds
/// for every q_a > 0.
enum class ConsumptionLaw { PaperLiteral, LegendreExact };

std::string_view to_string(ConsumptionLaw law);
ConsumptionLaw parse_consumption_law(std::string_view name);

/// Floor applied to q_a inside c* when the LegendreExact law drives the ODE.
inline constexpr double kLegendreQaFloor = 1e-3;

struct ControlPair {
    double consumption = 0.0;
    double investment = 0.0;
};

struct CostatePair {
    double q_a = 0.0;
    double q_k = 0.0;
};

struct Production {
    double theta = 0.0;  // consumer goods output
    double xi = 0.0;     // capital goods output
    double f = 0.0;      // theta + p * xi
};

/// Partial derivatives of the Hamiltonian, ordered (a, k, q_a, q_k).
struct HamiltonianGradient {
    double d_a = 0.0;
    double d_k = 0.0;
    double d_qa = 0.0;
    double d_qk = 0.0;
};

/// Utility of a single good: sqrt(x + 1/16) for x > 0, 5/4 - (1 - x)^2 otherwise.
double u1(double x);
double u1_prime(double x);

/// Raw feedback consumption. Throws DomainError for q_a <= 0 under
/// LegendreExact, where the supremum over c is unbounded.
double optimal_consumption(double q_a, ConsumptionLaw law);

/// d c*/d q_a. At the q_a = 2 seam the q_a < 2 branch is used.
double optimal_consumption_slope(double q_a, ConsumptionLaw law);

/// i* = q_k - p q_a, maximizer of (q_k - p q_a) i - i^2 / 2.
double optimal_investment(double q_a, double q_k, double price);

/// Linear-production economy with separable utility
/// u(a, k, c, i) = u1(c) + u1(a) + u1(k) - i^2 / 2.
///
/// Theta(k, p) = theta_coeff k, Xi(k, p) = xi_coeff k, g(k, p) = -depreciation_rate k.
struct Economy {
    double theta_coeff = 1.0;
    double xi_coeff = 0.1;
    double depreciation_rate = 0.5;
    ConsumptionLaw law = ConsumptionLaw::PaperLiteral;

    static Economy benchmark(ConsumptionLaw law = ConsumptionLaw::PaperLiteral) {
        return Economy{1.0, 0.1, 0.5, law};
    }

    /// Throws DomainError if any coefficient is negative or non-finite.
    void validate() const;

    Production production(double k, double price) const;
    double depreciation(double k, double price) const;
    double global_output_dk(double price) const { return theta_coeff + price * xi_coeff; }
    double depreciation_dk() const { return -depreciation_rate; }

    double utility(double a, double k, ControlPair controls) const;

    /// c* as used by the dynamics: LegendreExact evaluates at max(q_a, kLegendreQaFloor).
    double feedback_consumption(double q_a) const;
    double feedback_consumption_slope(double q_a) const;
    ControlPair feedback_controls(double q_a, double q_k, double price) const;

    /// h(a, k, c, i; q_a, q_k, p) = (-c - p i + F) q_a + (i + g) q_k + u(a, k, c, i).
    double pre_hamiltonian(double a, double k, ControlPair controls, double q_a, double q_k,
                           double price) const;

    double hamiltonian(double a, double k, double q_a, double q_k, double price) const;
    HamiltonianGradient hamiltonian_grad(double a, double k, double q_a, double q_k,
                                         double price) const;
};

}  // namespace mfg
