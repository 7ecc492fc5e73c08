#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "istm/error.hpp"
#include "istm/scatter.hpp"
#include "istm/validation/oracles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace istm;

namespace {
const double pi = std::numbers::pi;
const double kappa = std::sqrt(pi) / 2.0;

// Direct problems are shared between test cases; each takes well under a second.
const DirectResult& zero_run() {
    static const DirectResult r = direct_scattering(builtin_potential("zero", 1.0));
    return r;
}
const DirectResult& soliton_run() {
    static const DirectResult r = direct_scattering(builtin_potential("soliton", pi));
    return r;
}
const DirectResult& gaussian_run() {
    static const DirectResult r = direct_scattering(builtin_potential("gaussian-odd", 1.0));
    return r;
}
} // namespace

TEST_CASE("Mobius map") {
    auto p = MobiusPoint::from_rho(complex(0.0, 0.5));
    CHECK(std::abs(p.z) < 1e-15);
    auto q = MobiusPoint::from_z(complex(0.3, 0.0));
    CHECK(std::abs(MobiusPoint::from_rho(q.rho).z - q.z) < 1e-15);
    CHECK(std::abs(std::abs(MobiusPoint::from_rho(1.7).z) - 1.0) < 1e-15);
    CHECK_THROWS_AS(MobiusPoint::from_z(-1.0), Error);
    CHECK(rho_of_theta(2.0 * std::atan(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("free series") {
    const auto& s = zero_run().series;
    for (double zr : {-0.6, 0.0, 0.45}) {
        const complex z(zr, 0.1);
        const complex pole = (z - 1.0) / (2.0 * (z + 1.0));
        CHECK(std::abs(eval_series(s, SeriesKind::e, z) - 1.0) < 1e-12);
        CHECK(std::abs(eval_series(s, SeriesKind::g, z) - 1.0) < 1e-12);
        CHECK(std::abs(eval_series(s, SeriesKind::E, z) - pole) < 1e-12);
        CHECK(std::abs(eval_series(s, SeriesKind::G, z) + pole) < 1e-12);
        CHECK(std::abs(eval_phi(s, z) + (z - 1.0) / (z + 1.0)) < 1e-12);
    }
}

TEST_CASE("series at z = 0 collapses to the first term") {
    const auto& s = gaussian_run().series;
    CHECK(std::abs(eval_series(s, SeriesKind::e, 0.0) - (1.0 + s.a[0])) < 1e-15);
    CHECK(std::abs(eval_series(s, SeriesKind::g, 0.0) - (1.0 + s.b[0])) < 1e-15);
}

TEST_CASE("soliton series against closed-form Jost values") {
    const auto& s = soliton_run().series;
    for (double zr : {-0.5, 0.2, 0.7}) {
        const auto p = MobiusPoint::from_z(zr);
        const complex closed = validation::soliton_jost(kappa, p.rho, 0.0).value;
        const complex product = eval_series(s, SeriesKind::e, zr) * eval_series(s, SeriesKind::g, zr);
        CHECK(std::abs(product - closed * closed) < 1e-6);
    }
    const double z1 = (0.5 - kappa) / (0.5 + kappa);
    CHECK(std::abs(eval_phi(s, z1)) < 1e-9);
}

TEST_CASE("Phi derivative against a central difference") {
    const auto& s = gaussian_run().series;
    const double h = 1e-5;
    const complex fd = (eval_phi(s, 0.5 + h) - eval_phi(s, 0.5 - h)) / (2.0 * h);
    CHECK(std::abs(eval_phi_prime(s, 0.5) - fd) < 1e-7);
}

TEST_CASE("Phi against the complex-ODE Wronskian") {
    const auto& s = gaussian_run().series;
    for (complex rho : {complex(1.0, 0.0), complex(0.4, 0.3), complex(-2.0, 0.1)}) {
        const complex w = validation::jost_wronskian(presets::gaussian_odd, 12.0, rho);
        const complex phi = eval_phi(s, MobiusPoint::from_rho(rho).z);
        CHECK(std::abs(phi - w) <= 1e-5 * std::abs(w));
    }
}

TEST_CASE("eigenvalues") {
    CHECK(zero_run().data.eigen.empty());
    const auto& sol = soliton_run().data;
    REQUIRE(sol.eigen.size() == 1);
    CHECK(std::abs(sol.eigen[0].lambda + pi / 4.0) <= 1e-9);
    CHECK(std::abs(sol.eigen[0].tau - kappa) <= 1e-9);
    const auto& ex = gaussian_run().data;
    REQUIRE(ex.eigen.size() == 1);
    CHECK(std::abs(ex.eigen[0].lambda + 0.0138384593995) < 1e-12);
}

TEST_CASE("norming constants") {
    const auto& ex = gaussian_run().data.norming;
    REQUIRE(ex.size() == 1);
    CHECK(std::abs(ex[0].alpha_minus - 0.2055954681199) < 1e-9);
    CHECK(std::abs(ex[0].alpha_plus - 0.0416040800785) < 1e-9);
    const auto& sol = soliton_run().data.norming;
    REQUIRE(sol.size() == 1);
    CHECK(std::abs(sol[0].alpha_plus - std::sqrt(pi)) <= 3e-5);
    CHECK(std::abs(sol[0].alpha_minus - std::sqrt(pi)) <= 3e-5);
    CHECK(std::abs(sol[0].d - 1.0) <= 1e-6);
}

TEST_CASE("reflection coefficients") {
    SUBCASE("free") {
        for (const auto& v : zero_run().data.s_plus)
            CHECK(std::abs(v) < 1e-12);
    }
    SUBCASE("soliton is reflectionless") {
        double worst = 0.0;
        for (const auto& v : soliton_run().data.s_plus)
            worst = std::max(worst, std::abs(v));
        for (const auto& v : soliton_run().data.s_minus)
            worst = std::max(worst, std::abs(v));
        CHECK(worst <= 2e-4);
    }
    SUBCASE("odd Gaussian at rho = 1 against the ODE oracle") {
        auto refl = reflection_coefficients(gaussian_run().series, {2.0 * std::atan(2.0)});
        const complex oracle = validation::reflection_right(presets::gaussian_odd, 12.0, 1.0);
        CHECK(std::abs(refl.plus[0] - oracle) < 1e-5);
    }
    SUBCASE("samples sit on the midpoint grid") {
        const auto& d = gaussian_run().data;
        REQUIRE(d.theta.size() == 10000);
        CHECK(d.theta.front() > -pi);
        CHECK(std::abs(d.theta.front() + d.theta.back()) < 1e-12);
    }
}

TEST_CASE("time evolution") {
    const auto& d = soliton_run().data;
    auto same = evolve(d, 0.0);
    CHECK(same.s_plus == d.s_plus);
    CHECK(same.norming[0].alpha_plus == d.norming[0].alpha_plus);
    auto later = evolve(d, 0.5);
    CHECK(later.t == 0.5);
    CHECK(later.eigen[0].lambda == d.eigen[0].lambda);
    const double expected = std::sqrt(pi) * std::exp(4.0 * kappa * kappa * kappa);
    CHECK(std::abs(later.norming[0].alpha_plus / expected - 1.0) < 2e-5);
    CHECK(std::abs(later.norming[0].alpha_minus * std::exp(4.0 * kappa * kappa * kappa) - std::sqrt(pi)) < 3e-5);
    auto twice = evolve(evolve(gaussian_run().data, 0.3), 0.4);
    auto once = evolve(gaussian_run().data, 0.7);
    double worst = 0.0;
    for (std::size_t j = 0; j < once.s_plus.size(); ++j)
        worst = std::max(worst, std::abs(twice.s_plus[j] - once.s_plus[j]));
    CHECK(worst < 1e-12);
    CHECK_THROWS_AS(evolve(d, 1e6), Error);
}

TEST_CASE("scattering data round-trips through text") {
    const auto& d = gaussian_run().data;
    std::stringstream ss;
    write_scattering_data(ss, d);
    auto back = read_scattering_data(ss);
    CHECK(back.t == d.t);
    REQUIRE(back.eigen.size() == 1);
    CHECK(back.eigen[0].lambda == d.eigen[0].lambda);
    CHECK(back.norming[0].alpha_plus == d.norming[0].alpha_plus);
    CHECK(back.theta == d.theta);
    CHECK(back.s_plus == d.s_plus);
    CHECK(back.s_minus == d.s_minus);
    std::stringstream bad("# scattering data\nt zero\n");
    CHECK_THROWS_AS(read_scattering_data(bad), Error);
}
