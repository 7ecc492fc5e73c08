#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace istm::numerics {

/// Interpolating B-spline of order k (degree k-1). Knots are k-fold at the end points
/// with interior knots at running averages of k-1 consecutive data sites, so every data
/// site satisfies the Schoenberg–Whitney condition.
class SplineModel {
public:
    SplineModel() = default;
    SplineModel(std::vector<double> knots, std::vector<double> coefficients, int order);

    int order() const noexcept { return order_; }
    std::span<const double> knots() const noexcept { return knots_; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }
    double lower() const noexcept { return knots_.front(); }
    double upper() const noexcept { return knots_.back(); }

    /// k-th derivative at x, 0 <= k < order. Outside [lower, upper] the end polynomial
    /// pieces are extended.
    double evaluate(double x, int k = 0) const;
    double operator()(double x) const { return evaluate(x, 0); }

private:
    std::size_t span_index(double x) const;

    std::vector<double> knots_;
    std::vector<double> coefficients_;
    int order_ = 0;
};

inline constexpr int cubic_order = 4;
inline constexpr int quintic_order = 6;

/// Interpolates (x_i, y_i). x must be strictly increasing; order 4 or 6.
SplineModel fit_spline(std::span<const double> x, std::span<const double> y, int order = quintic_order);

/// k-th derivative of the spline at x; k must not exceed order-2.
double differentiate(const SplineModel& spline, int k, double x);

} // namespace istm::numerics
