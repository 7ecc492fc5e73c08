#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace istm::numerics {

struct Interval {
    double lower;
    double upper;
};

/// Scans f on scan_count equispaced points of the closed interval, refines every sign
/// change with Brent's bisection/secant/inverse-quadratic hybrid and keeps the refined
/// points with |f| <= tol (sign changes across a pole fail that test and are dropped).
/// Roots are returned in ascending order.
std::vector<double> bracketed_roots(const std::function<double(double)>& f, Interval interval,
                                    std::size_t scan_count, double tol);

/// Brent refinement of a bracket with f(a)·f(b) <= 0; stops when the bracket shrinks to
/// a few ulps or f vanishes exactly.
double refine_root(const std::function<double(double)>& f, double a, double b, double fa, double fb);

} // namespace istm::numerics
