#pragma once

#include "istm/numerics/grid.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace istm::numerics {

enum class Anchor { from_left, from_right };

/// Composite closed 6-point Newton–Cotes rule over the whole grid. Exact for quintics on
/// each panel. When count-1 is not a multiple of 5 the trailing intervals are integrated
/// with the quintic interpolant through the last six nodes.
template <class T>
T newton_cotes_6(std::span<const T> values, const UniformGrid& grid);

/// Running antiderivative F with F = 0 at the anchor node: F(x) = ∫_{start}^{x} f for
/// from_left and F(x) = ∫_{stop}^{x} f = -∫_{x}^{stop} f for from_right. Node values come
/// from integrating the panel quintic interpolant up to each node.
template <class T>
std::vector<T> cumulative_integral(std::span<const T> values, const UniformGrid& grid,
                                   Anchor anchor);

/// Nodes θ_j = -π + (j + 1/2)·2π/n, j = 0..n-1, on the open interval (-π, π).
std::vector<double> periodic_nodes(std::size_t n_nodes);

/// Trapezoidal rule for ∫_{-π}^{π} f dθ on the half-step shifted uniform nodes of
/// periodic_nodes(). For a 2π-periodic integrand this is the periodic trapezoid rule;
/// the endpoints ±π are never sampled.
std::complex<double> periodic_trapezoid(const std::function<std::complex<double>(double)>& f,
                                        std::size_t n_nodes);

/// Same rule applied to samples already taken on periodic_nodes(values.size()).
std::complex<double> periodic_trapezoid(std::span<const std::complex<double>> values);

} // namespace istm::numerics
