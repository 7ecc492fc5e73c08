#include "istm/jost.hpp"

#include "istm/error.hpp"
#include "istm/numerics/ode.hpp"
#include "istm/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace istm {
namespace {

using numerics::Anchor;
using numerics::UniformGrid;

UniformGrid half_grid(const Potential& q, Side side) {
    const std::size_t n = q.origin_index() + 1;
    const double b = q.support_radius();
    return side == Side::right ? UniformGrid(0.0, b, n) : UniformGrid(-b, 0.0, n);
}

// Potential sample at node j of the half grid.
double sample(const Potential& q, Side side, std::size_t j) {
    return q.samples()[side == Side::right ? q.origin_index() + j : j];
}

// Integrates the scaled equation y'' = s·y' + q·y from the far end of the half line
// (x = b for s = +1 on the right, x = -b for s = -1 on the left).
numerics::Trajectory2 integrate_scaled(const Potential& q, Side side, const UniformGrid& grid,
                                       numerics::State2 start, int substeps) {
    const double s = side == Side::right ? 1.0 : -1.0;
    const auto& f = q.evaluator();
    numerics::Rhs2 rhs = [s, &f](double x, const numerics::State2& y) {
        return numerics::State2{y[1], s * y[1] + f(x) * y[0]};
    };
    std::vector<double> nodes = grid.nodes();
    if (side == Side::right)
        std::reverse(nodes.begin(), nodes.end());
    auto traj = numerics::integrate_rk5(rhs, nodes, start, substeps);
    if (side == Side::right) {
        std::reverse(traj.first.begin(), traj.first.end());
        std::reverse(traj.second.begin(), traj.second.end());
    }
    return traj;
}

// max |y'' - (q + 1/4) y| / max |y|, with y'' from a 4th-order difference of y'.
double ode_residual(const Potential& q, Side side, const UniformGrid& grid, const std::vector<double>& y,
                    const std::vector<double>& dy) {
    const double h = grid.step();
    double worst = 0.0, scale = 0.0;
    for (double v : y)
        scale = std::max(scale, std::abs(v));
    for (std::size_t j = 2; j + 2 < y.size(); ++j) {
        const double d2 = (-dy[j + 2] + 8.0 * dy[j + 1] - 8.0 * dy[j - 1] + dy[j - 2]) / (12.0 * h);
        worst = std::max(worst, std::abs(d2 - (sample(q, side, j) + 0.25) * y[j]));
    }
    return scale > 0.0 ? worst / scale : worst;
}

std::vector<double> negate(std::vector<double> v) {
    for (auto& x : v)
        x = -x;
    return v;
}

} // namespace

JostHalf solve_jost_half(const Potential& q, Side side, int substeps) {
    JostHalf j;
    j.side = side;
    j.grid = half_grid(q, side);
    auto traj = integrate_scaled(q, side, j.grid, {1.0, 0.0}, substeps);
    j.scaled = std::move(traj.first);
    j.scaled_derivative = std::move(traj.second);
    const std::size_t n = j.grid.count();
    j.value.resize(n);
    j.derivative.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = j.grid.node(i);
        if (side == Side::right) {
            const double w = std::exp(-x / 2.0);
            j.value[i] = w * j.scaled[i];
            j.derivative[i] = w * (j.scaled_derivative[i] - j.scaled[i] / 2.0);
        } else {
            const double w = std::exp(x / 2.0);
            j.value[i] = w * j.scaled[i];
            j.derivative[i] = w * (j.scaled_derivative[i] + j.scaled[i] / 2.0);
        }
    }
    j.ode_residual = ode_residual(q, side, j.grid, j.value, j.derivative);
    return j;
}

SecondSolution second_solution(const Potential& q, const JostHalf& jost, bool allow_fallback, int substeps) {
    SecondSolution out;
    out.side = jost.side;
    const auto& grid = jost.grid;
    const std::size_t n = grid.count();
    const auto& u = jost.scaled;
    const auto& du = jost.scaled_derivative;
    const bool right = jost.side == Side::right;

    const auto zero_at = std::find_if(u.begin(), u.end(), [](double v) { return !(v > 0.0); });
    if (zero_at == u.end()) {
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid.node(i);
            f[i] = std::exp(right ? x : -x) / (u[i] * u[i]);
        }
        // S = ∫_0^x e^t/u² (right), T = ∫_x^0 e^{-t}/v² (left)
        std::vector<double> S = right ? numerics::cumulative_integral<double>(f, grid, Anchor::from_left)
                                      : negate(numerics::cumulative_integral<double>(f, grid, Anchor::from_right));
        out.scaled.resize(n);
        out.scaled_derivative.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid.node(i);
            out.scaled[i] = u[i] * S[i];
            out.scaled_derivative[i] = right ? du[i] * S[i] + std::exp(x) / u[i] : du[i] * S[i] - std::exp(-x) / u[i];
        }
    } else {
        if (!allow_fallback)
            fail(ErrorKind::singular_abel, right ? "e(i/2,x)" : "g(i/2,x)", " vanishes near x = ",
                 grid.node(static_cast<std::size_t>(zero_at - u.begin())));
        out.fallback = true;
        const double b = q.support_radius();
        auto traj = integrate_scaled(q, jost.side, grid, {0.0, right ? std::exp(b) : -std::exp(b)}, substeps);
        out.scaled = std::move(traj.first);
        out.scaled_derivative = std::move(traj.second);
    }

    out.value.resize(n);
    out.derivative.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.node(i);
        const double w = std::exp(right ? -x / 2.0 : x / 2.0);
        out.value[i] = w * out.scaled[i];
        out.derivative[i] = right ? w * (out.scaled_derivative[i] - out.scaled[i] / 2.0)
                                  : w * (out.scaled_derivative[i] + out.scaled[i] / 2.0);
    }
    return out;
}

JostBase build_jost_base(const Potential& q, bool allow_fallback, int substeps) {
    JostBase base;
    base.e_half = solve_jost_half(q, Side::right, substeps);
    base.g_half = solve_jost_half(q, Side::left, substeps);
    base.eta = second_solution(q, base.e_half, allow_fallback, substeps);
    base.xi = second_solution(q, base.g_half, allow_fallback, substeps);
    return base;
}

std::vector<double> wronskian(const JostHalf& jost, const SecondSolution& second) {
    std::vector<double> w(jost.value.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        // in scaled variables: W = e^{∓x}(u P' - u' P)
        const double x = jost.grid.node(i);
        const double uw = jost.scaled[i] * second.scaled_derivative[i] - jost.scaled_derivative[i] * second.scaled[i];
        w[i] = std::exp(jost.side == Side::right ? -x : x) * uw;
    }
    return w;
}

Seeds seed_coefficients(const JostBase& base, const Potential& q, const TailIntegrals& tails) {
    Seeds s;
    const std::size_t n = base.e_half.grid.count();
    const std::size_t origin = q.origin_index();
    s.a0.resize(n);
    s.a0_prime = base.e_half.scaled_derivative;
    s.d0.resize(n);
    s.b0.resize(n);
    s.b0_prime = base.g_half.scaled_derivative;
    s.c0.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.a0[i] = base.e_half.scaled[i] - 1.0;
        s.d0[i] = s.a0_prime[i] - s.a0[i] / 2.0 + tails.right[origin + i] / 2.0;
        s.b0[i] = base.g_half.scaled[i] - 1.0;
        s.c0[i] = s.b0_prime[i] + s.b0[i] / 2.0 - tails.left[i] / 2.0;
    }
    return s;
}

namespace {

SideTables recurse_right(const JostBase& base, const Seeds& seeds, int N) {
    SideTables t;
    t.side = Side::right;
    t.grid = base.e_half.grid;
    const auto& grid = t.grid;
    const std::size_t m = grid.count();
    const auto& u = base.e_half.scaled;
    const auto& du = base.e_half.scaled_derivative;
    const auto& P = base.eta.scaled;
    const auto& dP = base.eta.scaled_derivative;
    std::vector<double> ex(m);
    for (std::size_t i = 0; i < m; ++i)
        ex[i] = std::exp(-grid.node(i));

    t.value.push_back(seeds.a0);
    t.derivative.push_back(seeds.a0_prime);
    t.aux1.emplace_back(m, 0.0);
    t.aux2.emplace_back(m, 0.0);
    std::vector<double> J1(m, 0.0), J2(m, 0.0), dJ1(m, 0.0), dJ2(m, 0.0), f1(m), f2(m);
    for (int n = 1; n <= N; ++n) {
        const auto& a = t.value.back();
        const auto& da = t.derivative.back();
        for (std::size_t i = 0; i < m; ++i) {
            f1[i] = ex[i] * (du[i] - u[i]) * a[i];
            f2[i] = ex[i] * (dP[i] - P[i]) * a[i];
        }
        // from_right gives -∫_x^b, so adding it subtracts the integral
        const auto F1 = numerics::cumulative_integral<double>(f1, grid, Anchor::from_right);
        const auto F2 = numerics::cumulative_integral<double>(f2, grid, Anchor::from_right);
        std::vector<double> an(m), dan(m);
        for (std::size_t i = 0; i < m; ++i) {
            J1[i] += -ex[i] * u[i] * a[i] + F1[i];
            J2[i] += -ex[i] * P[i] * a[i] + F2[i];
            dJ1[i] -= ex[i] * u[i] * da[i];
            dJ2[i] -= ex[i] * P[i] * da[i];
            an[i] = seeds.a0[i] - 2.0 * (P[i] * J1[i] - u[i] * J2[i]);
            dan[i] = seeds.a0_prime[i] - 2.0 * dP[i] * J1[i] - 2.0 * P[i] * dJ1[i] + 2.0 * du[i] * J2[i] +
                     2.0 * u[i] * dJ2[i];
            if (!std::isfinite(an[i]) || !std::isfinite(dan[i]))
                fail(ErrorKind::range, "a_", n, " overflows at x = ", grid.node(i));
        }
        t.value.push_back(std::move(an));
        t.derivative.push_back(std::move(dan));
        t.aux1.push_back(J1);
        t.aux2.push_back(J2);
    }
    t.companion.push_back(seeds.d0);
    for (int n = 0; n < N; ++n) {
        std::vector<double> d(m);
        const auto k = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < m; ++i)
            d[i] = t.companion[k][i] + t.derivative[k + 1][i] - t.derivative[k][i] -
                   0.5 * (t.value[k + 1][i] + t.value[k][i]);
        t.companion.push_back(std::move(d));
    }
    return t;
}

SideTables recurse_left(const JostBase& base, const Seeds& seeds, int N) {
    SideTables t;
    t.side = Side::left;
    t.grid = base.g_half.grid;
    const auto& grid = t.grid;
    const std::size_t m = grid.count();
    const auto& v = base.g_half.scaled;
    const auto& dv = base.g_half.scaled_derivative;
    const auto& Q = base.xi.scaled;
    const auto& dQ = base.xi.scaled_derivative;
    std::vector<double> ex(m);
    for (std::size_t i = 0; i < m; ++i)
        ex[i] = std::exp(grid.node(i));

    t.value.push_back(seeds.b0);
    t.derivative.push_back(seeds.b0_prime);
    t.aux1.emplace_back(m, 0.0);
    t.aux2.emplace_back(m, 0.0);
    std::vector<double> I1(m, 0.0), I2(m, 0.0), dI1(m, 0.0), dI2(m, 0.0), f1(m), f2(m);
    for (int n = 1; n <= N; ++n) {
        const auto& bb = t.value.back();
        const auto& db = t.derivative.back();
        for (std::size_t i = 0; i < m; ++i) {
            f1[i] = ex[i] * (v[i] + dv[i]) * bb[i];
            f2[i] = ex[i] * (Q[i] + dQ[i]) * bb[i];
        }
        const auto F1 = numerics::cumulative_integral<double>(f1, grid, Anchor::from_left);
        const auto F2 = numerics::cumulative_integral<double>(f2, grid, Anchor::from_left);
        std::vector<double> bn(m), dbn(m);
        for (std::size_t i = 0; i < m; ++i) {
            I1[i] += ex[i] * v[i] * bb[i] - F1[i];
            I2[i] += ex[i] * Q[i] * bb[i] - F2[i];
            dI1[i] += ex[i] * v[i] * db[i];
            dI2[i] += ex[i] * Q[i] * db[i];
            bn[i] = seeds.b0[i] + 2.0 * (Q[i] * I1[i] - v[i] * I2[i]);
            dbn[i] = seeds.b0_prime[i] + 2.0 * dQ[i] * I1[i] + 2.0 * Q[i] * dI1[i] - 2.0 * dv[i] * I2[i] -
                     2.0 * v[i] * dI2[i];
            if (!std::isfinite(bn[i]) || !std::isfinite(dbn[i]))
                fail(ErrorKind::range, "b_", n, " overflows at x = ", grid.node(i));
        }
        t.value.push_back(std::move(bn));
        t.derivative.push_back(std::move(dbn));
        t.aux1.push_back(I1);
        t.aux2.push_back(I2);
    }
    t.companion.push_back(seeds.c0);
    for (int n = 0; n < N; ++n) {
        std::vector<double> c(m);
        const auto k = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < m; ++i)
            c[i] = t.companion[k][i] + t.derivative[k + 1][i] - t.derivative[k][i] +
                   0.5 * (t.value[k + 1][i] + t.value[k][i]);
        t.companion.push_back(std::move(c));
    }
    return t;
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

CoefficientTables recurse_coefficients(const JostBase& base, const Seeds& seeds, int N) {
    if (N < 0)
        fail(ErrorKind::input, "coefficient count N must be nonnegative, got ", N);
    CoefficientTables t;
    t.N = N;
    t.right = recurse_right(base, seeds, N);
    t.left = recurse_left(base, seeds, N);
    constexpr double decay_tolerance = 1e-10;
    if (N > 0) {
        const double ra = sup_norm(t.right.value.back());
        const double lb = sup_norm(t.left.value.back());
        if (ra > decay_tolerance || lb > decay_tolerance) {
            std::ostringstream os;
            os.precision(3);
            os << "slow coefficient decay: max|a_" << N << "| = " << ra << ", max|b_" << N << "| = " << lb;
            t.warnings.push_back(os.str());
        }
    }
    return t;
}

CoefficientTables compute_coefficients(const Potential& q, int N, bool allow_fallback) {
    const auto tails = tail_integrals(q);
    const auto base = build_jost_base(q, allow_fallback);
    auto tables = recurse_coefficients(base, seed_coefficients(base, q, tails), N);
    if (base.eta.fallback || base.xi.fallback)
        tables.warnings.push_back("Jost half solution has a zero; second solution from a Cauchy problem");
    return tables;
}

double partial_sum_residual(const SideTables& tables, const Potential& q, const TailIntegrals& tails, int upto) {
    const std::size_t m = tables.grid.count();
    const bool right = tables.side == Side::right;
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (int n = 0; n <= upto && n < static_cast<int>(tables.value.size()); ++n)
            sum += tables.value[static_cast<std::size_t>(n)][i];
        const double target = right ? tails.right[q.origin_index() + i] / 2.0 : tails.left[i] / 2.0;
        worst = std::max(worst, std::abs(sum - target));
    }
    return worst;
}

void write_coefficient_tables(std::ostream& out, const CoefficientTables& tables) {
    const auto old = out.precision(17);
    for (const SideTables* side : {&tables.right, &tables.left}) {
        const bool right = side->side == Side::right;
        const char* v = right ? "a" : "b";
        const char* c = right ? "d" : "c";
        out << "# side " << (right ? "right" : "left") << " N " << tables.N << "\n# x";
        for (int n = 0; n <= tables.N; ++n)
            out << ' ' << v << n;
        for (int n = 0; n <= tables.N; ++n)
            out << ' ' << v << n << "'";
        for (int n = 0; n <= tables.N; ++n)
            out << ' ' << c << n;
        out << '\n';
        for (std::size_t i = 0; i < side->grid.count(); ++i) {
            out << side->grid.node(i);
            for (const auto* block : {&side->value, &side->derivative, &side->companion})
                for (const auto& row : *block)
                    out << ' ' << row[i];
            out << '\n';
        }
    }
    out.precision(old);
}

} // namespace istm
