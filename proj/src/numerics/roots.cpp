#include "istm/numerics/roots.hpp"

#include "istm/error.hpp"

#include <cmath>
#include <limits>

namespace istm::numerics {

double refine_root(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if ((fa > 0.0) == (fb > 0.0))
        fail(ErrorKind::solver, "no sign change on [", a, ", ", b, "]");
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * std::numeric_limits<double>::min();
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0)
            return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
        if (!std::isfinite(fb))
            fail(ErrorKind::evaluation, "non-finite function value at ", b, " during root refinement");
    }
    return b;
}

std::vector<double> bracketed_roots(const std::function<double(double)>& f, Interval interval,
                                    std::size_t scan_count, double tol) {
    if (scan_count < 64)
        fail(ErrorKind::input, "root scan needs at least 64 points, got ", scan_count);
    if (!(interval.upper > interval.lower))
        fail(ErrorKind::input, "empty root interval [", interval.lower, ", ", interval.upper, "]");

    const double h = (interval.upper - interval.lower) / static_cast<double>(scan_count - 1);
    auto node = [&](std::size_t i) {
        return i + 1 == scan_count ? interval.upper : interval.lower + static_cast<double>(i) * h;
    };
    auto eval = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v))
            fail(ErrorKind::evaluation, "non-finite function value at scan node x = ", x);
        return v;
    };

    std::vector<double> roots;
    double x0 = node(0), f0 = eval(x0);
    if (f0 == 0.0)
        roots.push_back(x0);
    for (std::size_t i = 1; i < scan_count; ++i) {
        const double x1 = node(i), f1 = eval(x1);
        if (f1 == 0.0) {
            roots.push_back(x1);
        } else if (f0 != 0.0 && ((f0 < 0.0) != (f1 < 0.0))) {
            const double r = refine_root(f, x0, x1, f0, f1);
            if (std::abs(f(r)) <= tol)
                roots.push_back(r);
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

} // namespace istm::numerics
