#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace istm::numerics {

using State2 = std::array<double, 2>;
using Rhs2 = std::function<State2(double x, const State2& y)>;

struct Trajectory2 {
    std::vector<double> first;  // y_0 at each node
    std::vector<double> second; // y_1 at each node
};

/// Fixed-step fifth-order Runge–Kutta (Dormand–Prince weights) through the given node
/// sequence, starting from `initial` at nodes.front(). Nodes may be increasing or
/// decreasing; each node interval is split into `substeps` equal steps.
Trajectory2 integrate_rk5(const Rhs2& rhs, std::span<const double> nodes, State2 initial, int substeps = 2);

} // namespace istm::numerics
