#pragma once

#include <cstddef>
#include <vector>

namespace istm::numerics {

/// Equispaced nodes start = x_0 < x_1 < ... < x_{count-1} = stop.
class UniformGrid {
public:
    static constexpr std::size_t min_count = 6;

    UniformGrid(double start, double stop, std::size_t count);

    double start() const noexcept { return start_; }
    double stop() const noexcept { return stop_; }
    std::size_t count() const noexcept { return count_; }
    double step() const noexcept { return step_; }

    double node(std::size_t i) const noexcept {
        // pin the last node exactly to stop
        return i + 1 == count_ ? stop_ : start_ + static_cast<double>(i) * step_;
    }
    std::vector<double> nodes() const;

    /// Index of the node nearest to x (clamped to the grid).
    std::size_t nearest(double x) const noexcept;

private:
    double start_;
    double stop_;
    std::size_t count_;
    double step_;
};

} // namespace istm::numerics
