#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "istm/jost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace istm;

namespace {
const double kappa = std::sqrt(std::numbers::pi) / 2.0;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}
} // namespace

TEST_CASE("free Jost solutions") {
    auto q = builtin_potential("zero", 1.0, 10.0, 2001);
    auto base = build_jost_base(q);
    const auto& g = base.e_half.grid;
    for (std::size_t i = 0; i < g.count(); i += 50) {
        const double x = g.node(i);
        CHECK(std::abs(base.e_half.value[i] - std::exp(-x / 2)) < 1e-12 * std::exp(x / 2) + 1e-12);
        CHECK(std::abs(base.eta.value[i] - (std::exp(x / 2) - std::exp(-x / 2))) < 1e-9 * std::exp(x / 2));
    }
    const auto& gl = base.g_half.grid;
    for (std::size_t i = 0; i < gl.count(); i += 50) {
        const double x = gl.node(i);
        CHECK(std::abs(std::abs(base.xi.value[i]) - std::abs(std::exp(-x / 2) - std::exp(x / 2))) <
              1e-9 * std::exp(-x / 2));
    }
    CHECK_FALSE(base.eta.fallback);
}

TEST_CASE("soliton Jost solution against the closed form") {
    auto q = builtin_potential("soliton", std::numbers::pi);
    auto e = solve_jost_half(q, Side::right);
    // truncation at b = 12 limits agreement to about 1e-9
    CHECK(std::abs(e.value[0] - 0.5 / (0.5 + kappa)) < 5e-9);
    const std::size_t i = e.grid.nearest(2.0);
    const double x = e.grid.node(i);
    const double closed = std::exp(-x / 2) * (0.5 + kappa * std::tanh(kappa * x)) / (0.5 + kappa);
    CHECK(std::abs(e.value[i] - closed) < 5e-9);
    auto g = solve_jost_half(q, Side::left);
    CHECK(std::abs(g.value[g.grid.count() - 1] - e.value[0]) < 1e-12);
}

TEST_CASE("two step sizes agree") {
    auto q = builtin_potential("gaussian-odd", 1.0);
    auto coarse = solve_jost_half(q, Side::right, 1);
    auto fine = solve_jost_half(q, Side::right, 8);
    CHECK(std::abs(coarse.value[0] - fine.value[0]) < 1e-9);
    CHECK(coarse.ode_residual < 1e-6);
}

TEST_CASE("Abel Wronskians") {
    auto q = builtin_potential("gaussian-odd", 1.0);
    auto base = build_jost_base(q);
    for (double w : wronskian(base.e_half, base.eta))
        CHECK(std::abs(w - 1.0) < 1e-8);
    for (double w : wronskian(base.g_half, base.xi))
        CHECK(std::abs(w + 1.0) < 1e-8);
}

TEST_CASE("seed coefficients") {
    SUBCASE("zero potential") {
        auto q = builtin_potential("zero", 1.0);
        auto base = build_jost_base(q);
        auto seeds = seed_coefficients(base, q, tail_integrals(q));
        CHECK(max_abs(seeds.a0) < 1e-12);
        CHECK(max_abs(seeds.b0) < 1e-12);
        CHECK(max_abs(seeds.c0) < 1e-12);
        CHECK(max_abs(seeds.d0) < 1e-12);
    }
    SUBCASE("soliton at the origin") {
        auto q = builtin_potential("soliton", std::numbers::pi);
        auto base = build_jost_base(q);
        auto seeds = seed_coefficients(base, q, tail_integrals(q));
        CHECK(std::abs(seeds.a0[0] + kappa / (0.5 + kappa)) < 1e-9);
        CHECK(std::abs(seeds.a0_prime[0] - kappa * kappa / (0.5 + kappa)) < 1e-8);
        // a₀′ − a₀/2 + ½∫_0^∞q vanishes for this potential
        CHECK(std::abs(seeds.d0[0]) < 1e-8);
        CHECK(std::abs(seeds.b0.back() - seeds.a0[0]) < 1e-10);
    }
}

TEST_CASE("coefficient recursion") {
    SUBCASE("zero potential gives zero tables") {
        auto t = compute_coefficients(builtin_potential("zero", 1.0, 10.0, 2001), 8);
        for (int n = 0; n <= 8; ++n) {
            CHECK(max_abs(t.right.value[n]) < 1e-12);
            CHECK(max_abs(t.left.value[n]) < 1e-12);
            CHECK(max_abs(t.right.companion[n]) < 1e-12);
            CHECK(max_abs(t.left.companion[n]) < 1e-12);
        }
        CHECK(t.warnings.empty());
    }
    SUBCASE("partial sums approach half the tail integral") {
        auto q = builtin_potential("gaussian-odd", 1.0);
        auto t = compute_coefficients(q, 64);
        auto tails = tail_integrals(q);
        double previous = 1.0;
        for (int n : {10, 20, 30, 40, 64}) {
            const double r = std::max(partial_sum_residual(t.right, q, tails, n), partial_sum_residual(t.left, q, tails, n));
            CHECK(r < previous);
            previous = r;
        }
        CHECK(previous < 1e-6);
        // the tail beyond n = 30 is concentrated near x = 0; from x = 1 on it is already small
        double worst = 0.0;
        for (std::size_t i = t.right.grid.nearest(1.0); i < t.right.grid.count(); ++i) {
            double sum = 0.0;
            for (int n = 0; n <= 30; ++n)
                sum += t.right.value[n][i];
            worst = std::max(worst, std::abs(sum - tails.right[q.origin_index() + i] / 2.0));
        }
        CHECK(worst < 1e-6);
    }
    SUBCASE("slow decay is reported") {
        auto t = compute_coefficients(builtin_potential("piecewise", 1.0), 64);
        CHECK_FALSE(t.warnings.empty());
    }
}
