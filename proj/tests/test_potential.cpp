#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "istm/error.hpp"
#include "istm/potential.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace istm;

namespace {
const double kappa = std::sqrt(std::numbers::pi) / 2.0;
}

TEST_CASE("sampling on [-b, b]") {
    SUBCASE("zero") {
        auto q = builtin_potential("zero", 1.0, 10.0, 2001);
        for (double v : q.samples())
            CHECK(v == 0.0);
        CHECK(q.tail_below_threshold());
    }
    SUBCASE("odd Gaussian") {
        auto q = builtin_potential("gaussian-odd", 1.0, 10.0, 2001);
        CHECK(q.samples()[q.origin_index()] == 0.0);
        CHECK(q(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
        CHECK(q.grid().node(q.origin_index()) == 0.0);
    }
    SUBCASE("soliton") {
        auto q = builtin_potential("soliton", std::numbers::pi);
        CHECK(q.samples()[q.origin_index()] == doctest::Approx(-std::numbers::pi / 2).epsilon(1e-15));
        CHECK(q.samples().size() == 4801);
        CHECK(q.support_radius() == 12.0);
    }
    SUBCASE("piecewise branches") {
        CHECK(presets::piecewise(-1.0) == doctest::Approx(std::exp(-1.0) * std::cos(-4.0)));
        CHECK(presets::piecewise(0.0) == doctest::Approx(1.0));
        CHECK(presets::piecewise(1.0) == doctest::Approx(std::exp(-1.0) * std::cyl_bessel_j(0.0, 2.0)));
    }
}

TEST_CASE("bad input is rejected") {
    CHECK_THROWS_AS(build_potential(presets::zero, 10.0, 2000), Error);
    CHECK_THROWS_AS(build_potential(presets::zero, 10.0, 51), Error);
    CHECK_THROWS_AS(build_potential(presets::zero, -1.0, 2001), Error);
    CHECK_THROWS_AS(build_potential([](double x) { return 1.0 / x; }, 10.0, 2001), Error);
    CHECK_THROWS_AS(builtin_potential("nonsense", 1.0), Error);
}

TEST_CASE("slowly decaying tails are flagged") {
    auto q = build_potential([](double x) { return 1.0 / (1.0 + x * x); }, 10.0, 2001);
    CHECK_FALSE(q.tail_below_threshold());
    CHECK(q.endpoint_magnitude() == doctest::Approx(1.0 / 101.0));
}

TEST_CASE("Faddeev moment") {
    SUBCASE("zero is finite and zero") {
        auto r = check_faddeev(builtin_potential("zero", 1.0));
        CHECK(r.convergent);
        CHECK(r.interior == 0.0);
    }
    SUBCASE("odd Gaussian converges") {
        auto r = check_faddeev(builtin_potential("gaussian-odd", 1.0));
        CHECK(r.convergent);
        // ∫(1+|x|)|x|e^{-x²} dx = 1 + √π/2
        CHECK(std::abs(r.interior - (1.0 + std::sqrt(std::numbers::pi) / 2.0)) < 1e-8);
    }
    SUBCASE("harmonic tail diverges") {
        auto r = check_faddeev(build_potential([](double x) { return 1.0 / (1.0 + std::abs(x)); }, 12.0, 4801));
        CHECK_FALSE(r.convergent);
    }
}

TEST_CASE("tail integrals") {
    SUBCASE("zero") {
        auto t = tail_integrals(builtin_potential("zero", 1.0));
        for (std::size_t i = 0; i < t.right.size(); ++i) {
            CHECK(t.right[i] == 0.0);
            CHECK(t.left[i] == 0.0);
        }
    }
    SUBCASE("soliton") {
        auto q = builtin_potential("soliton", std::numbers::pi);
        auto t = tail_integrals(q);
        // the part of the potential beyond b = 12 contributes about 2e-9
        CHECK(std::abs(t.right[q.origin_index()] + 2.0 * kappa) < 1e-8);
        const std::size_t i = q.grid().nearest(1.5);
        const double x = q.grid().node(i);
        CHECK(std::abs(t.right[i] + 2.0 * kappa * (1.0 - std::tanh(kappa * x))) < 1e-8);
    }
    SUBCASE("odd Gaussian") {
        auto q = builtin_potential("gaussian-odd", 1.0);
        auto t = tail_integrals(q);
        CHECK(std::abs(t.right[q.origin_index()] - 0.5) < 1e-12);
        CHECK(std::abs(t.left[q.origin_index()] + 0.5) < 1e-12);
        CHECK(std::abs(t.total) < 1e-14);
    }
}

TEST_CASE("tabulated potentials") {
    const auto path = std::filesystem::temp_directory_path() / "istm_table_test.txt";
    {
        std::ofstream f(path);
        f << "# x q\n";
        f.precision(17);
        for (int i = 0; i <= 400; ++i) {
            const double x = -4.0 + 0.02 * i;
            f << x << ' ' << presets::gaussian_odd(x) << '\n';
        }
    }
    auto f = load_potential_table(path.string());
    CHECK(std::abs(f(0.73) - presets::gaussian_odd(0.73)) < 1e-6);
    CHECK(f(5.0) == 0.0);
    CHECK(f(-5.0) == 0.0);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_potential_table(path.string()), Error);
}
