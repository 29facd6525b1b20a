#include "mfg/price_curve.hpp"

#include <cmath>
#include <string>

namespace mfg {

PriceCurve::PriceCurve(double horizon, std::vector<double> samples)
    : horizon_(horizon), samples_(std::move(samples)) {
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
        throw std::invalid_argument("price curve horizon must be positive");
    }
    if (samples_.size() < 4) {
        throw std::invalid_argument("price curve needs at least 4 samples, got " +
                                    std::to_string(samples_.size()));
    }
    for (double s : samples_) {
        if (!std::isfinite(s)) throw std::invalid_argument("price samples must be finite");
    }

    const int m = intervals();
    spacing_ = horizon_ / m;
    curvature_.assign(samples_.size(), 0.0);

    // Natural end conditions; uniform spacing gives the tridiagonal system
    // M_{i-1} + 4 M_i + M_{i+1} = 6 (y_{i-1} - 2 y_i + y_{i+1}) / h^2, solved by Thomas.
    const int n = m - 1;
    std::vector<double> diag(n, 4.0), rhs(n);
    const double scale = 6.0 / (spacing_ * spacing_);
    for (int r = 0; r < n; ++r) {
        rhs[r] = scale * (samples_[r] - 2.0 * samples_[r + 1] + samples_[r + 2]);
    }
    for (int r = 1; r < n; ++r) {
        const double w = 1.0 / diag[r - 1];
        diag[r] -= w;
        rhs[r] -= w * rhs[r - 1];
    }
    for (int r = n - 1; r >= 0; --r) {
        const double upper = r + 1 < n ? curvature_[r + 2] : 0.0;
        curvature_[r + 1] = (rhs[r] - upper) / diag[r];
    }
}

PriceCurve PriceCurve::constant(double horizon, int intervals, double value) {
    return PriceCurve(horizon, std::vector<double>(static_cast<std::size_t>(intervals) + 1, value));
}

int PriceCurve::locate(double t, double& local) const {
    const double slack = 1e-12 * horizon_;
    if (!(t >= -slack && t <= horizon_ + slack)) {
        throw std::out_of_range("price queried at t = " + std::to_string(t) + " outside [0, " +
                                std::to_string(horizon_) + "]");
    }
    const int m = intervals();
    int i = static_cast<int>(std::floor(t / spacing_));
    if (i < 0) i = 0;
    if (i >= m) i = m - 1;
    local = t - i * spacing_;
    return i;
}

double PriceCurve::operator()(double t) const {
    double x;
    const int i = locate(t, x);
    const double h = spacing_;
    const double xr = h - x;
    return (curvature_[i] * xr * xr * xr + curvature_[i + 1] * x * x * x) / (6.0 * h) +
           (samples_[i] / h - curvature_[i] * h / 6.0) * xr +
           (samples_[i + 1] / h - curvature_[i + 1] * h / 6.0) * x;
}

double PriceCurve::derivative(double t) const {
    double x;
    const int i = locate(t, x);
    const double h = spacing_;
    const double xr = h - x;
    return (-curvature_[i] * xr * xr + curvature_[i + 1] * x * x) / (2.0 * h) +
           (samples_[i + 1] - samples_[i]) / h - (curvature_[i + 1] - curvature_[i]) * h / 6.0;
}

double PriceCurve::second_derivative(double t) const {
    double x;
    const int i = locate(t, x);
    return (curvature_[i] * (spacing_ - x) + curvature_[i + 1] * x) / spacing_;
}

double interpolate_price(const PriceCurve& curve, double t) { return curve(t); }

}  // namespace mfg
