#include "istm/pipeline.hpp"

#include "istm/error.hpp"
#include "istm/numerics/quadrature.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

namespace istm {
namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

template <class F>
auto stage(const char* name, double t, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        std::ostringstream os;
        os.precision(17);
        os << name << " stage";
        if (t >= 0.0)
            os << " at t = " << t;
        os << ": " << e.what();
        throw Error(e.kind(), os.str());
    }
}

double window_integral(const std::vector<double>& x, const std::vector<double>& f) {
    if (x.size() < numerics::UniformGrid::min_count)
        return 0.0;
    const numerics::UniformGrid grid(x.front(), x.back(), x.size());
    return numerics::newton_cotes_6<double>(f, grid);
}

} // namespace

SolutionField solve_cauchy(const CauchyProblem& problem) {
    const auto& q = problem.potential;
    const double b = q.support_radius();
    if (problem.times.empty())
        fail(ErrorKind::input, "no output times");
    if (!std::is_sorted(problem.times.begin(), problem.times.end()) || problem.times.front() < 0.0)
        fail(ErrorKind::input, "output times must be sorted and nonnegative");
    if (!(problem.x_lo > -b && problem.x_hi < b && problem.x_lo < problem.x_hi))
        fail(ErrorKind::input, "window (", problem.x_lo, ", ", problem.x_hi, ") must lie inside (", -b, ", ", b, ")");
    const auto faddeev = check_faddeev(q, 1.0);
    if (!faddeev.convergent)
        fail(ErrorKind::input, "potential '", q.name(), "' fails the decay check: ∫(1+|x|)|q| ≈ ", faddeev.interior,
             " with tail estimate ", faddeev.tail_estimate);

    SolutionField field;
    field.times = problem.times;
    auto start = clock_type::now();
    const auto direct = stage("direct", -1.0, [&] { return direct_scattering(q, problem.direct); });
    field.direct_seconds = seconds_since(start);
    field.initial_data = direct.data;
    field.warnings = direct.warnings;
    if (!q.tail_below_threshold())
        field.warnings.push_back("potential does not decay below the tail threshold at ±b");

    for (double t : problem.times) {
        start = clock_type::now();
        const auto data = stage("evolve", t, [&] { return evolve(direct.data, t); });
        const auto rec = stage("inverse", t, [&] {
            return recover_potential(data, problem.x_lo, problem.x_hi, problem.recovery);
        });
        TimeDiagnostics d;
        d.t = t;
        d.seconds = seconds_since(start);
        d.max_condition = rec.max_condition;
        d.stitch_residual = rec.stitch_residual;
        d.split = rec.split;
        if (field.x.empty())
            field.x = rec.x;
        for (double v : rec.q)
            if (!std::isfinite(v))
                fail(ErrorKind::evaluation, "non-finite recovered value at t = ", t);
        field.u.push_back(rec.q);
        field.diagnostics.push_back(d);
    }
    const auto report = diagnostics(field);
    field.diagnostics = report.per_time;
    return field;
}

double analytic_soliton(double c, double x, double t) {
    const double s = 1.0 / std::cosh(std::sqrt(c) * (x - c * t) / 2.0);
    return -(c / 2.0) * s * s;
}

FieldReport diagnostics(const SolutionField& field) {
    FieldReport r;
    r.direct_seconds = field.direct_seconds;
    double mlo = HUGE_VAL, mhi = -HUGE_VAL, plo = HUGE_VAL, phi = -HUGE_VAL;
    for (std::size_t i = 0; i < field.u.size(); ++i) {
        TimeDiagnostics d = i < field.diagnostics.size() ? field.diagnostics[i] : TimeDiagnostics{};
        d.t = field.times[i];
        std::vector<double> sq(field.u[i].size());
        for (std::size_t j = 0; j < sq.size(); ++j)
            sq[j] = field.u[i][j] * field.u[i][j];
        d.mass = window_integral(field.x, field.u[i]);
        d.momentum = window_integral(field.x, sq);
        mlo = std::min(mlo, d.mass);
        mhi = std::max(mhi, d.mass);
        plo = std::min(plo, d.momentum);
        phi = std::max(phi, d.momentum);
        r.max_condition = std::max(r.max_condition, d.max_condition);
        r.per_time.push_back(d);
    }
    if (!r.per_time.empty()) {
        r.mass_drift = mhi - mlo;
        r.momentum_drift = phi - plo;
    }
    return r;
}

void write_solution_matrix(std::ostream& out, const SolutionField& field) {
    const auto old = out.precision(17);
    out << "x";
    for (double x : field.x)
        out << ' ' << x;
    out << '\n';
    for (std::size_t i = 0; i < field.u.size(); ++i) {
        out << field.times[i];
        for (double v : field.u[i])
            out << ' ' << v;
        out << '\n';
    }
    out.precision(old);
}

void write_solution_slice(std::ostream& out, const SolutionField& field, std::size_t i) {
    const auto old = out.precision(17);
    out << "# t = " << field.times.at(i) << "\n# x u\n";
    for (std::size_t j = 0; j < field.x.size(); ++j)
        out << field.x[j] << ' ' << field.u.at(i)[j] << '\n';
    out.precision(old);
}

void write_diagnostics(std::ostream& out, const FieldReport& report) {
    const auto old = out.precision(17);
    out << "# direct_seconds " << report.direct_seconds << '\n';
    out << "# mass_drift " << report.mass_drift << " momentum_drift " << report.momentum_drift << '\n';
    out << "# t mass momentum max_condition stitch_residual split seconds\n";
    for (const auto& d : report.per_time)
        out << d.t << ' ' << d.mass << ' ' << d.momentum << ' ' << d.max_condition << ' ' << d.stitch_residual << ' '
            << d.split << ' ' << d.seconds << '\n';
    out.precision(old);
}

} // namespace istm
