#include "istm/potential.hpp"

#include "istm/error.hpp"
#include "istm/numerics/quadrature.hpp"
#include "istm/numerics/spline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace istm {

Potential::Potential(RealFunction evaluator, double support_radius, std::size_t node_count, std::string name,
                     double tail_threshold)
    : evaluator_(std::move(evaluator)),
      support_(support_radius),
      grid_(-support_radius, support_radius, node_count),
      name_(std::move(name)),
      tail_threshold_(tail_threshold) {
    if (!(support_radius > 0.0) || !std::isfinite(support_radius))
        fail(ErrorKind::input, "support radius must be positive, got ", support_radius);
    if (node_count < 101 || node_count % 2 == 0)
        fail(ErrorKind::input, "potential node count must be odd and at least 101, got ", node_count);
    if (!evaluator_)
        fail(ErrorKind::input, "empty potential evaluator");
    samples_.resize(node_count);
    for (std::size_t i = 0; i < node_count; ++i) {
        const double x = grid_.node(i);
        const double v = evaluator_(x);
        if (!std::isfinite(v))
            fail(ErrorKind::input, "potential '", name_, "' is not finite at x = ", x);
        samples_[i] = v;
    }
    endpoint_magnitude_ = std::max(std::abs(samples_.front()), std::abs(samples_.back()));
}

Potential build_potential(RealFunction evaluator, double b, std::size_t node_count, std::string name) {
    return Potential(std::move(evaluator), b, node_count, std::move(name));
}

namespace presets {

double zero(double) { return 0.0; }

double gaussian_odd(double x) { return x * std::exp(-x * x); }

double soliton(double c, double x) {
    const double s = 1.0 / std::cosh(std::sqrt(c) * x / 2.0);
    return -(c / 2.0) * s * s;
}

double piecewise(double x) {
    if (x < 0.0)
        return std::exp(x) * std::cos(4.0 * x);
    return std::exp(-x) * std::cyl_bessel_j(0.0, 2.0 * x);
}

} // namespace presets

Potential builtin_potential(const std::string& name, double c, double b, std::size_t node_count) {
    if (name == "zero")
        return build_potential(presets::zero, b, node_count, name);
    if (name == "gaussian-odd")
        return build_potential(presets::gaussian_odd, b, node_count, name);
    if (name == "piecewise")
        return build_potential(presets::piecewise, b, node_count, name);
    if (name == "soliton") {
        if (!(c > 0.0))
            fail(ErrorKind::input, "soliton speed c must be positive, got ", c);
        return build_potential([c](double x) { return presets::soliton(c, x); }, b, node_count, name);
    }
    fail(ErrorKind::input, "unknown built-in potential '", name, "'");
}

RealFunction load_potential_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::io, "cannot open potential file '", path, "'");
    std::vector<double> xs, qs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream row(line);
        double x = 0.0, q = 0.0;
        if (!(row >> x >> q))
            fail(ErrorKind::io, "malformed line ", line_no, " in '", path, "'");
        xs.push_back(x);
        qs.push_back(q);
    }
    if (xs.size() < 6)
        fail(ErrorKind::io, "potential file '", path, "' needs at least 6 rows, has ", xs.size());
    auto spline = std::make_shared<numerics::SplineModel>(numerics::fit_spline(xs, qs, numerics::cubic_order));
    return [spline](double x) {
        if (x < spline->lower() || x > spline->upper())
            return 0.0;
        return spline->evaluate(x);
    };
}

FaddeevReport check_faddeev(const Potential& q, double alpha) {
    FaddeevReport report;
    report.alpha = alpha;
    const auto& grid = q.grid();
    const auto& s = q.samples();
    std::vector<double> weighted(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        weighted[i] = std::pow(1.0 + std::abs(grid.node(i)), alpha) * std::abs(s[i]);
    report.interior = numerics::newton_cotes_6<double>(weighted, grid);

    // Envelope decay rate from the peaks of |q| over the last two half units on each side.
    const double b = q.support_radius();
    const double h = grid.step();
    const auto band_max = [&](double from, double to) {
        double m = 0.0;
        for (std::size_t i = grid.nearest(from); i <= grid.nearest(to); ++i)
            m = std::max(m, std::abs(s[i]));
        return m;
    };
    const double width = std::min(0.5, b / 4.0);
    const auto tail = [&](double outer_peak, double inner_peak) {
        if (outer_peak == 0.0)
            return 0.0;
        const double rate = std::log(inner_peak / outer_peak) / width;
        if (!(rate > 0.0)) {
            report.convergent = false;
            return HUGE_VAL;
        }
        // ∫_b^∞ (1+x)^α M e^{-k(x-b)} dx with the polynomial factor expanded to first order
        return std::pow(1.0 + b, alpha) * outer_peak / rate * (1.0 + alpha / (rate * (1.0 + b)));
    };
    const double right = tail(band_max(b - width + h / 2, b), band_max(b - 2 * width, b - width - h / 2));
    const double left = tail(band_max(-b, -b + width - h / 2), band_max(-b + width + h / 2, -b + 2 * width));
    report.tail_estimate = right + left;
    if (report.tail_estimate > 0.1 * report.interior)
        report.convergent = false;
    return report;
}

TailIntegrals tail_integrals(const Potential& q) {
    TailIntegrals t;
    const auto& s = q.samples();
    t.left = numerics::cumulative_integral<double>(s, q.grid(), numerics::Anchor::from_left);
    t.right = numerics::cumulative_integral<double>(s, q.grid(), numerics::Anchor::from_right);
    for (auto& v : t.right)
        v = -v;
    t.total = numerics::newton_cotes_6<double>(s, q.grid());
    return t;
}

} // namespace istm
