#include "istm/numerics/grid.hpp"

#include "istm/error.hpp"

#include <algorithm>
#include <cmath>

namespace istm::numerics {

UniformGrid::UniformGrid(double start, double stop, std::size_t count)
    : start_(start), stop_(stop), count_(count), step_(0.0) {
    if (count < min_count)
        fail(ErrorKind::degenerate_grid, "grid needs at least ", min_count, " nodes, got ", count);
    if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start))
        fail(ErrorKind::degenerate_grid, "grid interval [", start, ", ", stop, "] is empty");
    step_ = (stop - start) / static_cast<double>(count - 1);
    if (!(step_ > 0.0))
        fail(ErrorKind::degenerate_grid, "grid step underflows on [", start, ", ", stop, "]");
}

std::vector<double> UniformGrid::nodes() const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i)
        out[i] = node(i);
    return out;
}

std::size_t UniformGrid::nearest(double x) const noexcept {
    const double r = std::round((x - start_) / step_);
    if (!(r > 0.0))
        return 0;
    return std::min(count_ - 1, static_cast<std::size_t>(r));
}

} // namespace istm::numerics
