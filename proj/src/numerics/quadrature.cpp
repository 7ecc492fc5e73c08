#include "istm/numerics/quadrature.hpp"

#include "istm/error.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace istm::numerics {
namespace {

// partial[k-1][j] = ∫_0^k ℓ_j(s) ds for the quintic Lagrange basis on nodes 0..5, times 1440.
// The last row is the closed 6-point rule 5/288·(19, 75, 50, 50, 75, 19).
constexpr std::array<std::array<double, 6>, 5> partial_weights = {{
    {475.0, 1427.0, -798.0, 482.0, -173.0, 27.0},
    {448.0, 2064.0, 224.0, 224.0, -96.0, 16.0},
    {459.0, 1971.0, 1026.0, 1026.0, -189.0, 27.0},
    {448.0, 2048.0, 768.0, 2048.0, 448.0, 0.0},
    {475.0, 1875.0, 1250.0, 1250.0, 1875.0, 475.0},
}};

template <class T>
T panel_partial(const T* f, int upto, double h) {
    if (upto == 0)
        return T{};
    T s{};
    const auto& w = partial_weights[static_cast<std::size_t>(upto - 1)];
    for (int j = 0; j < 6; ++j)
        s += w[static_cast<std::size_t>(j)] * f[j];
    return s * (h / 1440.0);
}

template <class T>
void check_sizes(std::span<const T> values, const UniformGrid& grid) {
    if (values.size() != grid.count())
        fail(ErrorKind::degenerate_grid, "sample count ", values.size(), " does not match grid count ",
             grid.count());
}

template <class T>
std::vector<T> cumulative_from_left(std::span<const T> f, double h) {
    const std::size_t n = f.size();
    std::vector<T> out(n, T{});
    const std::size_t intervals = n - 1;
    const std::size_t panels = intervals / 5;
    for (std::size_t p = 0; p < panels; ++p) {
        const std::size_t base = 5 * p;
        for (int k = 1; k <= 5; ++k)
            out[base + static_cast<std::size_t>(k)] = out[base] + panel_partial(&f[base], k, h);
    }
    const std::size_t rest = intervals % 5;
    if (rest != 0) {
        // overlapping panel on the last six nodes
        const std::size_t s = n - 6;
        const std::size_t done = 5 * panels;
        const int offset = static_cast<int>(done - s);
        const T origin = panel_partial(&f[s], offset, h);
        for (std::size_t k = 1; k <= rest; ++k)
            out[done + k] = out[done] + (panel_partial(&f[s], offset + static_cast<int>(k), h) - origin);
    }
    return out;
}

} // namespace

template <class T>
T newton_cotes_6(std::span<const T> values, const UniformGrid& grid) {
    check_sizes(values, grid);
    return cumulative_from_left(values, grid.step()).back();
}

template <class T>
std::vector<T> cumulative_integral(std::span<const T> values, const UniformGrid& grid, Anchor anchor) {
    check_sizes(values, grid);
    if (anchor == Anchor::from_left)
        return cumulative_from_left(values, grid.step());
    std::vector<T> reversed(values.rbegin(), values.rend());
    auto acc = cumulative_from_left(std::span<const T>(reversed), grid.step());
    std::vector<T> out(values.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = -acc[out.size() - 1 - i];
    return out;
}

template double newton_cotes_6<double>(std::span<const double>, const UniformGrid&);
template std::complex<double> newton_cotes_6<std::complex<double>>(std::span<const std::complex<double>>,
                                                                   const UniformGrid&);
template std::vector<double> cumulative_integral<double>(std::span<const double>, const UniformGrid&, Anchor);
template std::vector<std::complex<double>> cumulative_integral<std::complex<double>>(
    std::span<const std::complex<double>>, const UniformGrid&, Anchor);

std::vector<double> periodic_nodes(std::size_t n_nodes) {
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n_nodes);
    std::vector<double> theta(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j)
        theta[j] = -std::numbers::pi + (static_cast<double>(j) + 0.5) * h;
    return theta;
}

std::complex<double> periodic_trapezoid(const std::function<std::complex<double>(double)>& f,
                                        std::size_t n_nodes) {
    if (n_nodes < 16)
        fail(ErrorKind::quadrature, "periodic trapezoid needs at least 16 nodes, got ", n_nodes);
    const auto theta = periodic_nodes(n_nodes);
    std::complex<double> sum{};
    for (double t : theta) {
        const auto v = f(t);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorKind::quadrature, "non-finite integrand at theta = ", t);
        sum += v;
    }
    return sum * (2.0 * std::numbers::pi / static_cast<double>(n_nodes));
}

std::complex<double> periodic_trapezoid(std::span<const std::complex<double>> values) {
    if (values.size() < 16)
        fail(ErrorKind::quadrature, "periodic trapezoid needs at least 16 nodes, got ", values.size());
    std::complex<double> sum{};
    const auto theta = periodic_nodes(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag()))
            fail(ErrorKind::quadrature, "non-finite integrand at theta = ", theta[j]);
        sum += values[j];
    }
    return sum * (2.0 * std::numbers::pi / static_cast<double>(values.size()));
}

} // namespace istm::numerics
