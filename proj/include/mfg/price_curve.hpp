#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace mfg {

/// Price sampled at m + 1 equidistant nodes t_i = i T / m on [0, T], read back
/// through a natural cubic spline.
class PriceCurve {
public:
    PriceCurve(double horizon, std::vector<double> samples);

    static PriceCurve constant(double horizon, int intervals, double value);

    double horizon() const { return horizon_; }
    int intervals() const { return static_cast<int>(samples_.size()) - 1; }
    double node_time(int i) const { return horizon_ * i / intervals(); }
    std::span<const double> samples() const { return samples_; }

    /// Throws std::out_of_range outside [0, T].
    double operator()(double t) const;
    double derivative(double t) const;
    double second_derivative(double t) const;

private:
    int locate(double t, double& local) const;

    double horizon_;
    double spacing_;
    std::vector<double> samples_;
    std::vector<double> curvature_;  // second derivative at the nodes
};

double interpolate_price(const PriceCurve& curve, double t);

}  // namespace mfg
