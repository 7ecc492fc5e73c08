#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "istm/error.hpp"
#include "istm/glm.hpp"
#include "istm/numerics/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace istm;

namespace {
const double pi = std::numbers::pi;
const double kappa = std::sqrt(pi) / 2.0;

ScatteringData empty_data(std::size_t n = 2000) {
    ScatteringData d;
    d.theta = numerics::periodic_nodes(n);
    d.s_plus.assign(n, complex{});
    d.s_minus.assign(n, complex{});
    return d;
}

// exact reflectionless one-soliton data
ScatteringData rank_one() {
    auto d = empty_data();
    d.eigen.push_back({(0.5 - kappa) / (0.5 + kappa), kappa, -kappa * kappa});
    d.norming.push_back({std::sqrt(pi), std::sqrt(pi), 1.0});
    return d;
}

const ScatteringData& gaussian_data() {
    static const ScatteringData d = direct_scattering(builtin_potential("gaussian-odd", 1.0)).data;
    return d;
}
const DirectResult& gaussian_direct() {
    static const DirectResult r = direct_scattering(builtin_potential("gaussian-odd", 1.0));
    return r;
}
} // namespace

TEST_CASE("circle kernel integral") {
    const auto theta = numerics::periodic_nodes(10000);
    SUBCASE("zero samples") {
        std::vector<complex> s(theta.size());
        CHECK(circle_kernel_integral(theta, s, 0.4, 0, 2, SystemSide::plus) == complex{});
    }
    SUBCASE("analytic in the closing half-plane") {
        std::vector<complex> s(theta.size());
        for (std::size_t j = 0; j < theta.size(); ++j)
            s[j] = 1.0 / (0.5 - complex(0.0, rho_of_theta(theta[j])));
        CHECK(std::abs(circle_kernel_integral(theta, s, 0.0, 0, 2, SystemSide::plus)) < 1e-12);
        // e^{2iρx} oscillates without bound near θ = ±π, so for x > 0 convergence is only algebraic
        for (double x : {0.5, 2.0})
            CHECK(std::abs(circle_kernel_integral(theta, s, x, 0, 2, SystemSide::plus)) < 5e-4);
    }
    SUBCASE("requires n_power > m") {
        std::vector<complex> s(theta.size());
        CHECK_THROWS_AS(circle_kernel_integral(theta, s, 0.0, 2, 2, SystemSide::plus), Error);
    }
}

TEST_CASE("system assembly") {
    SUBCASE("no data gives the identity") {
        auto sys = assemble_system(empty_data(), 0.3, 4, SystemSide::plus);
        CHECK(sys.matrix.isIdentity(0.0));
        CHECK(sys.rhs.isZero(0.0));
        auto r = solve_first_component(sys);
        CHECK(r.value == 0.0);
        CHECK(r.condition == doctest::Approx(1.0));
    }
    SUBCASE("rank-one soliton entries") {
        auto sys = assemble_system(rank_one(), 0.0, 3, SystemSide::plus);
        CHECK(std::abs(sys.matrix(0, 0) - 1.0 - std::sqrt(pi) / ((0.5 + kappa) * (0.5 + kappa))) < 1e-12);
        CHECK(std::abs(sys.rhs(0) + std::sqrt(pi) / (0.5 + kappa)) < 1e-12);
        // Hankel structure
        CHECK(std::abs(sys.matrix(1, 2) - sys.matrix(2, 1)) < 1e-15);
        CHECK(std::abs(sys.matrix(0, 3) - sys.matrix(1, 2)) < 1e-15);
    }
    SUBCASE("overflow is a range error") {
        CHECK_THROWS_AS(assemble_system(rank_one(), -500.0, 3, SystemSide::plus), Error);
    }
}

TEST_CASE("first component") {
    SUBCASE("rank-one closed form with one equation") {
        const double alpha = std::sqrt(pi);
        for (double x : {-1.0, 0.0, 1.5}) {
            const double e = alpha * std::exp(-2.0 * kappa * x);
            const double a00 = e / ((0.5 + kappa) * (0.5 + kappa));
            const double r0 = -e / (0.5 + kappa);
            auto r = solve_first_component(assemble_system(rank_one(), x, 0, SystemSide::plus));
            CHECK(std::abs(r.value - r0 / (1.0 + a00)) < 1e-12);
        }
    }
    SUBCASE("matches the direct problem at the origin") {
        auto r = solve_first_component(assemble_system(gaussian_data(), 0.0, 5, SystemSide::plus));
        CHECK(std::abs(r.value - gaussian_direct().tables.right.value[0][0]) < 2e-3);
        auto l = solve_first_component(assemble_system(gaussian_data(), 0.0, 5, SystemSide::minus));
        const auto& left = gaussian_direct().tables.left;
        CHECK(std::abs(l.value - left.value[0][left.origin()]) < 2e-3);
    }
    SUBCASE("ill-conditioned systems are refused") {
        TruncatedSystem sys;
        sys.matrix = Eigen::MatrixXd::Identity(2, 2);
        sys.matrix(1, 1) = 1e-14;
        sys.rhs = Eigen::VectorXd::Ones(2);
        CHECK_THROWS_AS(solve_first_component(sys), Error);
    }
}

TEST_CASE("potential recovery") {
    SUBCASE("no data recovers zero") {
        auto rec = recover_potential(empty_data(), -2.0, 2.0);
        for (double v : rec.q)
            CHECK(std::abs(v) < 1e-12);
    }
    SUBCASE("odd Gaussian on (-5, 7)") {
        auto rec = recover_potential(gaussian_data(), -5.0, 7.0);
        double worst = 0.0;
        for (std::size_t j = 0; j < rec.x.size(); ++j)
            worst = std::max(worst, std::abs(rec.q[j] - presets::gaussian_odd(rec.x[j])));
        CHECK(worst <= 1.5e-3);
        CHECK(rec.x.front() == -5.0);
        CHECK(std::abs(rec.x.back() - 7.0) < 1e-12);
        CHECK(rec.max_condition < 1e3);
    }
    SUBCASE("soliton on (-5, 7)") {
        auto data = direct_scattering(builtin_potential("soliton", pi)).data;
        auto rec = recover_potential(data, -5.0, 7.0);
        double worst = 0.0;
        for (std::size_t j = 0; j < rec.x.size(); ++j)
            worst = std::max(worst, std::abs(rec.q[j] - presets::soliton(pi, rec.x[j])));
        CHECK(worst <= 8e-4);
    }
    SUBCASE("fixed splits follow the requested orientation") {
        RecoveryOptions opts;
        opts.split = SplitMode::origin;
        auto rec = recover_potential(rank_one(), -1.0, 1.0, opts);
        for (std::size_t j = 0; j < rec.x.size(); ++j)
            CHECK(rec.side[j] == (rec.x[j] >= 0.0 ? 1 : -1));
        opts.split = SplitMode::mirrored;
        rec = recover_potential(rank_one(), -1.0, 1.0, opts);
        for (std::size_t j = 0; j < rec.x.size(); ++j)
            CHECK(rec.side[j] == (rec.x[j] < 0.0 ? 1 : -1));
    }
    SUBCASE("bad windows are input errors") {
        CHECK_THROWS_AS(recover_potential(empty_data(), 1.0, -1.0), Error);
    }
}

TEST_CASE("split mode names") {
    CHECK(parse_split_mode("adaptive") == SplitMode::adaptive);
    CHECK(parse_split_mode("origin") == SplitMode::origin);
    CHECK(to_string(SplitMode::mirrored) == "mirrored");
    CHECK_THROWS_AS(parse_split_mode("left"), Error);
}

TEST_CASE("recovered potential file") {
    auto rec = recover_potential(rank_one(), -0.5, 0.5);
    std::ostringstream os;
    write_recovered_potential(os, rec);
    std::istringstream is(os.str());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream row(line);
        double a, b, c, d;
        CHECK(static_cast<bool>(row >> a >> b >> c >> d));
        ++rows;
    }
    CHECK(rows == rec.x.size());
}
