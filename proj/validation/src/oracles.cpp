#include "istm/validation/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace istm::validation {
namespace {

const complex I{0.0, 1.0};

// y'' = (q - ρ²) y from x0 to x1 with fixed RK4 steps (count chosen from the step size).
ComplexPair rk4(const RealFunction& q, double b, complex rho, double x0, double x1, ComplexPair y, double step) {
    const auto pot = [&](double x) { return std::abs(x) > b ? 0.0 : q(x); };
    const auto n = static_cast<long>(std::ceil(std::abs(x1 - x0) / step));
    if (n == 0)
        return y;
    const double h = (x1 - x0) / static_cast<double>(n);
    const complex r2 = rho * rho;
    complex u = y.value, v = y.derivative;
    double x = x0;
    for (long i = 0; i < n; ++i) {
        const double qa = pot(x), qm = pot(x + h / 2), qb = pot(x + h);
        const complex k1u = v, k1v = (qa - r2) * u;
        const complex k2u = v + h / 2 * k1v, k2v = (qm - r2) * (u + h / 2 * k1u);
        const complex k3u = v + h / 2 * k2v, k3v = (qm - r2) * (u + h / 2 * k2u);
        const complex k4u = v + h * k3v, k4v = (qb - r2) * (u + h * k3u);
        u += h / 6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        x = x0 + static_cast<double>(i + 1) * h;
    }
    return {u, v};
}

} // namespace

ComplexPair jost_right(const RealFunction& q, double b, complex rho, double x, double step) {
    const complex e = std::exp(I * rho * b);
    return rk4(q, b, rho, b, x, {e, I * rho * e}, step);
}

ComplexPair jost_left(const RealFunction& q, double b, complex rho, double x, double step) {
    const complex g = std::exp(I * rho * b); // e^{-iρ(-b)}
    return rk4(q, b, rho, -b, x, {g, -I * rho * g}, step);
}

complex jost_wronskian(const RealFunction& q, double b, complex rho, double step) {
    const auto e = jost_right(q, b, rho, 0.0, step);
    const auto g = jost_left(q, b, rho, 0.0, step);
    return e.value * g.derivative - e.derivative * g.value;
}

complex reflection_right(const RealFunction& q, double b, double rho, double step) {
    const auto e = jost_right(q, b, rho, 0.0, step);
    const auto em = jost_right(q, b, -rho, 0.0, step);
    const auto g = jost_left(q, b, rho, 0.0, step);
    const complex w = e.value * g.derivative - e.derivative * g.value;
    const complex wm = em.value * g.derivative - em.derivative * g.value;
    return -wm / w;
}

ComplexPair soliton_jost(double kappa, complex rho, double x) {
    const double th = std::tanh(kappa * x);
    const double sech2 = 1.0 - th * th;
    const complex ph = std::exp(I * rho * x);
    const complex den = I * rho - kappa;
    const complex value = ph * (I * rho - kappa * th) / den;
    const complex derivative = ph * (I * rho * (I * rho - kappa * th) - kappa * kappa * sech2) / den;
    return {value, derivative};
}

int sturm_count(const RealFunction& q, double b, double energy_gap, double step) {
    // solution ~ e^{kx} at -∞ with energy -k²
    const double k = std::sqrt(energy_gap);
    const auto pot = [&](double x) { return q(x) + k * k; };
    const auto n = static_cast<long>(std::ceil(2 * b / step));
    const double h = 2 * b / static_cast<double>(n);
    double u = 1.0, v = k, x = -b;
    int zeros = 0;
    for (long i = 0; i < n; ++i) {
        const double k1u = v, k1v = pot(x) * u;
        const double k2u = v + h / 2 * k1v, k2v = pot(x + h / 2) * (u + h / 2 * k1u);
        const double k3u = v + h / 2 * k2v, k3v = pot(x + h / 2) * (u + h / 2 * k2u);
        const double k4u = v + h * k3v, k4v = pot(x + h) * (u + h * k3u);
        const double un = u + h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
        v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
        if ((u > 0) != (un > 0))
            ++zeros;
        u = un;
        x = -b + static_cast<double>(i + 1) * h;
    }
    // beyond b: y = A e^{k(x-b)} + B e^{-k(x-b)}, one more zero iff A, B have opposite
    // signs and |B| > |A|
    const double A = (u + v / k) / 2, B = (u - v / k) / 2;
    if (A * B < 0 && std::abs(B) > std::abs(A))
        ++zeros;
    return zeros;
}

complex real_line_integral(const std::function<complex(double)>& f, double tolerance) {
    using boost::math::quadrature::gauss_kronrod;
    const double inf = std::numeric_limits<double>::infinity();
    const double re = gauss_kronrod<double, 61>::integrate([&](double r) { return f(r).real(); }, -inf, inf, 15,
                                                           tolerance);
    const double im = gauss_kronrod<double, 61>::integrate([&](double r) { return f(r).imag(); }, -inf, inf, 15,
                                                           tolerance);
    return {re, im};
}

} // namespace istm::validation
