#include "istm/numerics/ode.hpp"

#include "istm/error.hpp"

#include <cmath>

namespace istm::numerics {
namespace {

State2 axpy(const State2& y, double h, std::initializer_list<std::pair<double, const State2*>> terms) {
    State2 out = y;
    for (const auto& [c, k] : terms) {
        out[0] += h * c * (*k)[0];
        out[1] += h * c * (*k)[1];
    }
    return out;
}

State2 dopri5_step(const Rhs2& f, double x, const State2& y, double h) {
    const State2 k1 = f(x, y);
    const State2 k2 = f(x + h / 5.0, axpy(y, h, {{1.0 / 5.0, &k1}}));
    const State2 k3 = f(x + 3.0 * h / 10.0, axpy(y, h, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}));
    const State2 k4 =
        f(x + 4.0 * h / 5.0, axpy(y, h, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}));
    const State2 k5 = f(x + 8.0 * h / 9.0, axpy(y, h,
                                                 {{19372.0 / 6561.0, &k1},
                                                  {-25360.0 / 2187.0, &k2},
                                                  {64448.0 / 6561.0, &k3},
                                                  {-212.0 / 729.0, &k4}}));
    const State2 k6 = f(x + h, axpy(y, h,
                                    {{9017.0 / 3168.0, &k1},
                                     {-355.0 / 33.0, &k2},
                                     {46732.0 / 5247.0, &k3},
                                     {49.0 / 176.0, &k4},
                                     {-5103.0 / 18656.0, &k5}}));
    return axpy(y, h,
                {{35.0 / 384.0, &k1},
                 {500.0 / 1113.0, &k3},
                 {125.0 / 192.0, &k4},
                 {-2187.0 / 6784.0, &k5},
                 {11.0 / 84.0, &k6}});
}

} // namespace

Trajectory2 integrate_rk5(const Rhs2& rhs, std::span<const double> nodes, State2 initial, int substeps) {
    if (nodes.empty())
        fail(ErrorKind::solver, "empty node sequence");
    if (substeps < 1)
        fail(ErrorKind::solver, "substeps must be positive, got ", substeps);
    Trajectory2 out;
    out.first.resize(nodes.size());
    out.second.resize(nodes.size());
    State2 y = initial;
    out.first[0] = y[0];
    out.second[0] = y[1];
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double h = (nodes[i] - nodes[i - 1]) / substeps;
        double x = nodes[i - 1];
        for (int s = 0; s < substeps; ++s) {
            y = dopri5_step(rhs, x, y, h);
            x = s + 1 == substeps ? nodes[i] : x + h;
        }
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]))
            fail(ErrorKind::solver, "solution overflow at node ", i, " (x = ", nodes[i], ")");
        out.first[i] = y[0];
        out.second[i] = y[1];
    }
    return out;
}

} // namespace istm::numerics
