#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "istm/error.hpp"
#include "istm/numerics/grid.hpp"
#include "istm/numerics/quadrature.hpp"
#include "istm/numerics/spline.hpp"
#include "istm/pipeline.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace istm;

namespace {
const double pi = std::numbers::pi;

const SolutionField& soliton_field() {
    static const SolutionField f = [] {
        CauchyProblem p{builtin_potential("soliton", pi)};
        p.times = {0.0, 0.5, 1.0};
        return solve_cauchy(p);
    }();
    return f;
}
} // namespace

TEST_CASE("analytic solitary wave") {
    CHECK(analytic_soliton(pi, 0.0, 0.0) == -pi / 2);
    CHECK(analytic_soliton(2.0, 2.0 * 0.7, 0.7) == doctest::Approx(-1.0).epsilon(1e-15));
    const double s = 1.0 / std::cosh(std::sqrt(pi) * 1.5);
    CHECK(std::abs(analytic_soliton(pi, 3.0, 0.0) + pi / 2 * s * s) < 1e-14);
    CHECK(std::abs(analytic_soliton(pi, 3.0, 0.0) - presets::soliton(pi, 3.0)) < 1e-14);
}

TEST_CASE("zero potential stays zero") {
    CauchyProblem p{builtin_potential("zero", 1.0)};
    p.times = {0.0, 1.0};
    p.direct.theta_count = 2000;
    auto f = solve_cauchy(p);
    // roundoff in the spline second derivatives only
    for (const auto& row : f.u)
        for (double v : row)
            CHECK(std::abs(v) < 1e-10);
    auto r = diagnostics(f);
    CHECK(std::abs(r.mass_drift) < 1e-10);
    for (const auto& d : r.per_time) {
        CHECK(std::abs(d.mass) < 1e-10);
        CHECK(std::abs(d.momentum) < 1e-18);
    }
}

TEST_CASE("solitary wave evolution") {
    const auto& f = soliton_field();
    REQUIRE(f.u.size() == 3);
    std::vector<double> err(3, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < f.x.size(); ++j)
            err[i] = std::max(err[i], std::abs(f.u[i][j] - analytic_soliton(pi, f.x[j], f.times[i])));
    CHECK(err[2] <= 2.4e-4);
    CHECK(err[2] <= err[0] + 1e-4);

    // translate of the initial profile on the common window
    const auto initial = numerics::fit_spline(f.x, f.u[0]);
    double shift_err = 0.0;
    for (std::size_t i = 1; i < 3; ++i)
        for (std::size_t j = 0; j < f.x.size(); ++j) {
            const double back = f.x[j] - pi * f.times[i];
            if (back >= f.x.front())
                shift_err = std::max(shift_err, std::abs(f.u[i][j] - initial(back)));
        }
    CHECK(shift_err <= 5e-4);
}

TEST_CASE("solitary wave invariants") {
    auto r = diagnostics(soliton_field());
    numerics::UniformGrid g(-5.0, 7.0, 601);
    for (const auto& d : r.per_time) {
        std::vector<double> u(g.count());
        for (std::size_t j = 0; j < g.count(); ++j)
            u[j] = analytic_soliton(pi, g.node(j), d.t);
        CHECK(std::abs(d.mass - numerics::newton_cotes_6<double>(u, g)) < 1e-3);
        CHECK(d.max_condition >= 1.0);
    }
    // the window (-5, 7) loses part of the tail as the wave moves right; compare with the exact loss
    auto window_mass = [](double t) {
        const double k = std::sqrt(pi) / 2.0;
        return -std::sqrt(pi) * (std::tanh(k * (7.0 - pi * t)) - std::tanh(k * (-5.0 - pi * t)));
    };
    CHECK(std::abs(r.mass_drift - std::abs(window_mass(1.0) - window_mass(0.0))) < 1e-3);
}

TEST_CASE("problem validation") {
    CauchyProblem p{builtin_potential("gaussian-odd", 1.0)};
    p.times = {0.5, 0.0};
    CHECK_THROWS_AS(solve_cauchy(p), Error);
    p.times = {-1.0};
    CHECK_THROWS_AS(solve_cauchy(p), Error);
    p.times = {0.0};
    p.x_hi = 13.0;
    CHECK_THROWS_AS(solve_cauchy(p), Error);
    CauchyProblem slow{build_potential([](double x) { return 1.0 / (1.0 + std::abs(x)); })};
    CHECK_THROWS_AS(solve_cauchy(slow), Error);
}

TEST_CASE("stage failures name the stage and time") {
    CauchyProblem p{builtin_potential("soliton", pi)};
    p.times = {0.0, 400.0};
    try {
        solve_cauchy(p);
        FAIL("expected a failure");
    } catch (const Error& e) {
        const std::string what = e.what();
        CHECK(what.find("t = 400") != std::string::npos);
    }
}

TEST_CASE("output formats") {
    const auto& f = soliton_field();
    std::ostringstream m;
    write_solution_matrix(m, f);
    std::istringstream is(m.str());
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#')
            rows.push_back(line);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].rfind("x ", 0) == 0);

    std::ostringstream s;
    write_solution_slice(s, f, 2);
    std::istringstream ss(s.str());
    std::size_t count = 0;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream row(line);
        double x, u;
        CHECK(static_cast<bool>(row >> x >> u));
        ++count;
    }
    CHECK(count == f.x.size());
}
