#include "istm/numerics/spline.hpp"

#include "istm/error.hpp"

#include <algorithm>
#include <cmath>

namespace istm::numerics {
namespace {

// Values of the `order` B-splines that are nonzero on [t_mu, t_mu+1) together with their
// derivatives up to `nderiv`, in the layout ders[d][r] for basis index mu-order+1+r.
std::vector<std::vector<double>> basis_derivatives(std::span<const double> t, std::size_t mu, double x,
                                                   int order, int nderiv) {
    const int p = order - 1;
    std::vector<std::vector<double>> ndu(order, std::vector<double>(order, 0.0));
    std::vector<double> left(order, 0.0), right(order, 0.0);
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = x - t[mu + 1 - j];
        right[j] = t[mu + j] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }

    std::vector<std::vector<double>> ders(nderiv + 1, std::vector<double>(order, 0.0));
    for (int j = 0; j <= p; ++j)
        ders[0][j] = ndu[j][p];

    std::vector<std::vector<double>> a(2, std::vector<double>(order, 0.0));
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a[0][0] = 1.0;
        for (int k = 1; k <= nderiv; ++k) {
            double d = 0.0;
            const int rk = r - k, pk = p - k;
            if (r >= k) {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                d = a[s2][0] * ndu[rk][pk];
            }
            const int j1 = rk >= -1 ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                d += a[s2][j] * ndu[rk + j][pk];
            }
            if (r <= pk) {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            ders[k][r] = d;
            std::swap(s1, s2);
        }
    }
    double factor = p;
    for (int k = 1; k <= nderiv; ++k) {
        for (int j = 0; j <= p; ++j)
            ders[k][j] *= factor;
        factor *= (p - k);
    }
    return ders;
}

std::size_t find_span(std::span<const double> t, std::size_t n_coef, int order, double x) {
    const std::size_t lo = static_cast<std::size_t>(order - 1);
    const std::size_t hi = n_coef - 1;
    if (x >= t[hi + 1])
        return hi;
    if (x <= t[lo])
        return lo;
    // last mu in [lo, hi] with t[mu] <= x
    auto it = std::upper_bound(t.begin() + static_cast<std::ptrdiff_t>(lo),
                               t.begin() + static_cast<std::ptrdiff_t>(hi + 1), x);
    return static_cast<std::size_t>(it - t.begin()) - 1;
}

} // namespace

SplineModel::SplineModel(std::vector<double> knots, std::vector<double> coefficients, int order)
    : knots_(std::move(knots)), coefficients_(std::move(coefficients)), order_(order) {
    if (knots_.size() != coefficients_.size() + static_cast<std::size_t>(order_))
        fail(ErrorKind::fit, "spline has ", knots_.size(), " knots for ", coefficients_.size(),
             " coefficients of order ", order_);
}

std::size_t SplineModel::span_index(double x) const {
    return find_span(knots_, coefficients_.size(), order_, x);
}

double SplineModel::evaluate(double x, int k) const {
    if (k < 0 || k >= order_)
        fail(ErrorKind::evaluation, "derivative order ", k, " not available for spline order ", order_);
    const std::size_t mu = span_index(x);
    const auto ders = basis_derivatives(knots_, mu, x, order_, k);
    double sum = 0.0;
    for (int r = 0; r < order_; ++r)
        sum += coefficients_[mu + 1 - static_cast<std::size_t>(order_) + static_cast<std::size_t>(r)] * ders[k][r];
    return sum;
}

SplineModel fit_spline(std::span<const double> x, std::span<const double> y, int order) {
    if (order != cubic_order && order != quintic_order)
        fail(ErrorKind::fit, "spline order must be 4 or 6, got ", order);
    const std::size_t n = x.size();
    if (y.size() != n)
        fail(ErrorKind::fit, "abscissa count ", n, " differs from ordinate count ", y.size());
    if (n < static_cast<std::size_t>(order))
        fail(ErrorKind::fit, "order ", order, " spline needs at least ", order, " points, got ", n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            fail(ErrorKind::fit, "non-finite data at index ", i);
        if (i > 0 && !(x[i] > x[i - 1]))
            fail(ErrorKind::fit, "abscissae not strictly increasing at index ", i, " (x = ", x[i], ")");
    }

    const auto k = static_cast<std::size_t>(order);
    std::vector<double> t(n + k);
    for (std::size_t i = 0; i < k; ++i) {
        t[i] = x.front();
        t[n + i] = x.back();
    }
    for (std::size_t i = 0; i + k < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 1; j < k; ++j)
            s += x[i + j];
        t[k + i] = s / static_cast<double>(k - 1);
    }

    // Banded collocation system; row i touches columns mu-k+1..mu.
    std::vector<std::size_t> first(n);
    std::vector<std::vector<double>> rows(n);
    std::size_t lower_bw = 0, upper_bw = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t mu = find_span(t, n, order, x[i]);
        first[i] = mu + 1 - k;
        rows[i] = basis_derivatives(t, mu, x[i], order, 0)[0];
        if (i > first[i])
            lower_bw = std::max(lower_bw, i - first[i]);
        if (first[i] + k - 1 > i)
            upper_bw = std::max(upper_bw, first[i] + k - 1 - i);
    }
    const std::size_t width = lower_bw + upper_bw + 1;
    std::vector<double> band(n * width, 0.0); // band[i*width + (c - i + lower_bw)]
    auto at = [&](std::size_t i, std::size_t c) -> double& { return band[i * width + (c + lower_bw - i)]; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < k; ++r)
            at(i, first[i] + r) = rows[i][r];

    // Gaussian elimination without pivoting: collocation matrices under Schoenberg–Whitney
    // are totally positive.
    std::vector<double> rhs(y.begin(), y.end());
    for (std::size_t j = 0; j < n; ++j) {
        const double pivot = at(j, j);
        if (std::abs(pivot) < 1e-300)
            fail(ErrorKind::fit, "singular collocation matrix at x = ", x[j]);
        const std::size_t last_row = std::min(n - 1, j + lower_bw);
        const std::size_t last_col = std::min(n - 1, j + upper_bw);
        for (std::size_t i = j + 1; i <= last_row; ++i) {
            const double factor = at(i, j) / pivot;
            if (factor == 0.0)
                continue;
            for (std::size_t c = j; c <= last_col; ++c)
                at(i, c) -= factor * at(j, c);
            rhs[i] -= factor * rhs[j];
        }
    }
    std::vector<double> coef(n);
    for (std::size_t jj = n; jj-- > 0;) {
        double s = rhs[jj];
        const std::size_t last_col = std::min(n - 1, jj + upper_bw);
        for (std::size_t c = jj + 1; c <= last_col; ++c)
            s -= at(jj, c) * coef[c];
        coef[jj] = s / at(jj, jj);
    }
    return SplineModel(std::move(t), std::move(coef), order);
}

double differentiate(const SplineModel& spline, int k, double x) {
    if (k < 0 || k > spline.order() - 2)
        fail(ErrorKind::evaluation, "derivative order ", k, " exceeds order-2 for spline order ",
             spline.order());
    return spline.evaluate(x, k);
}

} // namespace istm::numerics
