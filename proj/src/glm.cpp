#include "istm/glm.hpp"

#include "istm/error.hpp"
#include "istm/numerics/quadrature.hpp"
#include "istm/numerics/spline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

namespace istm {
namespace {

constexpr double imaginary_limit = 1e-6;

double direction(SystemSide side) { return side == SystemSide::plus ? 1.0 : -1.0; }

// w_j = s_j exp(±2iρ_j x) with 2ρ = tan(θ/2).
std::vector<complex> weighted_samples(std::span<const double> theta, std::span<const complex> samples, double x,
                                      SystemSide side) {
    const double sg = direction(side);
    std::vector<complex> w(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        w[j] = samples[j] * std::polar(1.0, sg * std::tan(theta[j] / 2.0) * x);
        if (!std::isfinite(w[j].real()) || !std::isfinite(w[j].imag()))
            fail(ErrorKind::quadrature, "circle integrand not finite at θ = ", theta[j], ", x = ", x);
    }
    return w;
}

// Σ_k α_k e^{∓2τ_k x} β_k^p / (1/2 + τ_k)^{extra}, β = (1/2 - τ)/(1/2 + τ), for p = 0..max_power.
std::vector<double> discrete_sums(const ScatteringData& data, double x, SystemSide side, int max_power, int extra) {
    std::vector<double> out(static_cast<std::size_t>(max_power + 1), 0.0);
    const double sg = direction(side);
    for (std::size_t k = 0; k < data.eigen.size(); ++k) {
        const double tau = data.eigen[k].tau;
        const double alpha = side == SystemSide::plus ? data.norming[k].alpha_plus : data.norming[k].alpha_minus;
        const double c = std::exp(std::log(alpha) - sg * 2.0 * tau * x) / std::pow(0.5 + tau, extra);
        if (!std::isfinite(c))
            fail(ErrorKind::range, "discrete kernel term overflows at x = ", x, " (τ = ", tau, ", α = ", alpha, ")");
        const double beta = (0.5 - tau) / (0.5 + tau);
        double power = 1.0;
        for (auto& v : out) {
            v += c * power;
            power *= beta;
        }
    }
    return out;
}

double sign_power(int p) { return p % 2 == 0 ? 1.0 : -1.0; }

// Finite section of the given size.
TruncatedSystem assemble(const ScatteringData& data, double x, int size, SystemSide side) {
    if (size < 1)
        fail(ErrorKind::input, "system size must be positive, got ", size);
    if (data.s_plus.size() != data.theta.size() || data.s_minus.size() != data.theta.size())
        fail(ErrorKind::input, "reflection samples do not match the θ grid");
    if (data.norming.size() != data.eigen.size())
        fail(ErrorKind::input, "norming constants do not match the eigenvalues");
    const int hmax = 2 * (size - 1);
    const auto moments = circle_moments(data, x, side, hmax, size - 1);
    const auto dA = discrete_sums(data, x, side, hmax, 2);
    const auto dr = discrete_sums(data, x, side, size - 1, 1);

    TruncatedSystem sys;
    sys.x = x;
    sys.side = side;
    sys.matrix = Eigen::MatrixXd::Identity(size, size);
    sys.rhs.resize(size);
    double residue = 0.0;
    for (int p = 0; p <= hmax; ++p)
        residue = std::max(residue, std::abs(moments.hankel[static_cast<std::size_t>(p)].imag()));
    for (int m = 0; m < size; ++m)
        residue = std::max(residue, std::abs(moments.rhs[static_cast<std::size_t>(m)].imag()));
    sys.imaginary_residue = residue;
    if (residue > imaginary_limit)
        fail(ErrorKind::consistency, "kernel entries have imaginary part ", residue, " at x = ", x,
             "; reflection samples are not conjugate symmetric");
    for (int m = 0; m < size; ++m) {
        for (int n = 0; n < size; ++n) {
            const auto p = static_cast<std::size_t>(m + n);
            sys.matrix(m, n) += sign_power(m + n) * (dA[p] + moments.hankel[p].real());
        }
        const auto k = static_cast<std::size_t>(m);
        sys.rhs(m) = sign_power(m + 1) * (dr[k] + moments.rhs[k].real());
    }
    return sys;
}

} // namespace

complex circle_kernel_integral(std::span<const double> theta, std::span<const complex> samples, double x, int m,
                               int n_power, SystemSide sign) {
    if (n_power - m < 1)
        fail(ErrorKind::input, "circle kernel needs n_power - m >= 1, got m = ", m, ", n_power = ", n_power);
    if (theta.size() != samples.size())
        fail(ErrorKind::input, "reflection samples do not match the θ grid");
    const auto w = weighted_samples(theta, samples, x, sign);
    std::vector<complex> f(w.size());
    const int pole_power = n_power - m - 2;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const complex z = std::polar(1.0, theta[j]);
        complex v = w[j] * std::pow(z, m + 1);
        if (pole_power > 0)
            v *= std::pow(z + 1.0, pole_power);
        else if (pole_power < 0)
            v /= (z + 1.0);
        f[j] = v;
    }
    return numerics::periodic_trapezoid(f);
}

CircleMoments circle_moments(const ScatteringData& data, double x, SystemSide side, int max_hankel, int max_rhs) {
    const auto& samples = side == SystemSide::plus ? data.s_plus : data.s_minus;
    const auto w = weighted_samples(data.theta, samples, x, side);
    CircleMoments out;
    out.hankel.assign(static_cast<std::size_t>(max_hankel + 1), complex{});
    out.rhs.assign(static_cast<std::size_t>(max_rhs + 1), complex{});
    const int top = std::max(max_hankel, max_rhs);
    for (std::size_t j = 0; j < w.size(); ++j) {
        const complex z = std::polar(1.0, data.theta[j]);
        const complex wr = w[j] / (z + 1.0);
        complex zp = z; // z^{p+1}
        for (int p = 0; p <= top; ++p) {
            if (p <= max_hankel)
                out.hankel[static_cast<std::size_t>(p)] += w[j] * zp;
            if (p <= max_rhs)
                out.rhs[static_cast<std::size_t>(p)] += wr * zp;
            zp *= z;
        }
    }
    // the trapezoid weight 2π/n combined with the 1/2π prefactor
    const double scale = 1.0 / static_cast<double>(w.size());
    for (auto& v : out.hankel)
        v *= scale;
    for (auto& v : out.rhs)
        v *= scale;
    return out;
}

TruncatedSystem assemble_system(const ScatteringData& data, double x, int Ns, SystemSide side) {
    if (Ns < 0)
        fail(ErrorKind::input, "N_s must be nonnegative, got ", Ns);
    return assemble(data, x, Ns + 1, side);
}

SolveResult solve_first_component(const TruncatedSystem& system, double max_condition) {
    SolveResult r;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system.matrix);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    r.condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (!(r.condition <= max_condition))
        fail(ErrorKind::linear_solve, "system at x = ", system.x, " has condition number ", r.condition);
    r.solution = system.matrix.partialPivLu().solve(system.rhs);
    r.residual = (system.matrix * r.solution - system.rhs).lpNorm<Eigen::Infinity>();
    r.value = r.solution(0);
    if (!std::isfinite(r.value))
        fail(ErrorKind::linear_solve, "non-finite solution at x = ", system.x);
    return r;
}

namespace {

struct NodeSolve {
    double value = 0.0;
    double indicator = std::numeric_limits<double>::infinity();
    double residual = 0.0;
    double condition = 0.0;
    std::exception_ptr error;
};

// N_s-section solve; with `probe` the system is assembled at size 2N_s+2 and the leading
// solution is tested against the omitted equations, relative to |component + 1|.
NodeSolve solve_node(const ScatteringData& data, double x, SystemSide side, const RecoveryOptions& opts, bool probe) {
    NodeSolve out;
    try {
        const int n = opts.Ns + 1;
        const auto big = assemble(data, x, probe ? 2 * n : n, side);
        TruncatedSystem head = big;
        head.matrix = big.matrix.topLeftCorner(n, n);
        head.rhs = big.rhs.head(n);
        const auto r = solve_first_component(head, opts.max_condition);
        out.value = r.value;
        out.residual = r.residual;
        out.condition = r.condition;
        if (probe) {
            const Eigen::VectorXd omitted = big.matrix.bottomLeftCorner(n, n) * r.solution - big.rhs.tail(n);
            out.indicator = omitted.lpNorm<Eigen::Infinity>() / std::abs(r.value + 1.0);
        } else {
            out.indicator = 0.0;
        }
    } catch (...) {
        out.error = std::current_exception();
    }
    return out;
}

} // namespace

RecoveredPotential recover_potential(const ScatteringData& data, double lo, double hi, const RecoveryOptions& opts) {
    if (!(hi > lo))
        fail(ErrorKind::input, "recovery window must have hi > lo, got (", lo, ", ", hi, ")");
    if (!(opts.spacing > 0.0) || opts.margin < 0.0)
        fail(ErrorKind::input, "recovery spacing must be positive and margin nonnegative");
    if (opts.Ns < 0)
        fail(ErrorKind::input, "N_s must be nonnegative, got ", opts.Ns);
    const auto cells = static_cast<std::size_t>(std::max(5.0, std::round((hi - lo) / opts.spacing)));
    const double h = (hi - lo) / static_cast<double>(cells);
    const std::size_t pad =
        std::max<std::size_t>(static_cast<std::size_t>(std::ceil(opts.margin / h - 1e-9)), opts.spline_order);
    const std::size_t n = cells + 1 + 2 * pad;
    const auto node = [&](std::size_t i) {
        return lo + (static_cast<double>(i) - static_cast<double>(pad)) * h;
    };
    const std::size_t first = pad, last = pad + cells; // window indices

    const bool probe = opts.split == SplitMode::adaptive;
    std::vector<NodeSolve> A(n), B(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        A[i] = solve_node(data, node(i), SystemSide::plus, opts, probe);
        B[i] = solve_node(data, node(i), SystemSide::minus, opts, probe);
    }

    // split index s: the right-hand system covers i >= s, the left-hand one i < s
    std::size_t s = first;
    if (opts.split == SplitMode::adaptive) {
        // cost of split s: summed indicator of A on window nodes >= s and of B on window nodes < s
        std::vector<double> suffix(last + 2, 0.0), prefix(last + 2, 0.0);
        for (std::size_t i = last + 1; i-- > first;)
            suffix[i] = suffix[i + 1] + (A[i].error ? HUGE_VAL : A[i].indicator);
        for (std::size_t i = first + 1; i <= last + 1; ++i)
            prefix[i] = prefix[i - 1] + (B[i - 1].error ? HUGE_VAL : B[i - 1].indicator);
        double best = HUGE_VAL;
        for (std::size_t i = first; i <= last + 1; ++i) {
            const double f = suffix[i] + prefix[i];
            if (i == first) {
                best = f;
                continue;
            }
            // near-equal candidates resolve toward x = 0
            const bool better = f < best * (1.0 - 1e-9);
            const bool tie = !better && f <= best * (1.0 + 1e-9);
            if (better || (tie && std::abs(node(i)) < std::abs(node(s)))) {
                s = i;
                best = std::min(best, f);
            }
        }
    } else {
        const double x0 = std::clamp(0.0, lo, hi);
        s = first + static_cast<std::size_t>(std::round((x0 - lo) / h));
    }
    const bool a_right = opts.split != SplitMode::mirrored;
    const auto& right = a_right ? A : B;
    const auto& left = a_right ? B : A;

    // Splines reach `pad` nodes across the split so derivatives at the split are interior.
    const std::size_t r_begin = s >= pad ? s - pad : 0;
    const std::size_t l_end = std::min(n - 1, s + pad);
    const auto side_q = [&](const std::vector<NodeSolve>& sol, std::size_t from, std::size_t to, bool is_a) {
        std::vector<double> xs, ys;
        for (std::size_t i = from; i <= to; ++i) {
            if (sol[i].error)
                std::rethrow_exception(sol[i].error);
            xs.push_back(node(i));
            ys.push_back(sol[i].value);
        }
        const auto spline = numerics::fit_spline(xs, ys, opts.spline_order);
        std::vector<double> q(xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const double den = ys[j] + 1.0;
            if (std::abs(den) < 1e-8)
                fail(ErrorKind::recovery_singularity, is_a ? "a0 + 1" : "b0 + 1", " = ", den, " at x = ", xs[j]);
            const double d1 = numerics::differentiate(spline, 1, xs[j]);
            const double d2 = numerics::differentiate(spline, 2, xs[j]);
            q[j] = is_a ? (d2 - d1) / den : (d2 + d1) / den;
        }
        return q;
    };
    const auto q_right = side_q(right, r_begin, n - 1, a_right);
    const auto q_left = side_q(left, 0, l_end, !a_right);

    RecoveredPotential out;
    out.split = node(s);
    out.stitch_residual = std::abs(q_right[s - r_begin] - q_left[s]);
    for (std::size_t i = first; i <= last; ++i) {
        const bool use_right = i >= s;
        const auto& sol = use_right ? right[i] : left[i];
        const bool is_a = use_right == a_right;
        out.x.push_back(node(i));
        out.component.push_back(sol.value);
        out.q.push_back(use_right ? q_right[i - r_begin] : q_left[i]);
        out.side.push_back(is_a ? 1 : -1);
        out.max_condition = std::max(out.max_condition, sol.condition);
        out.max_residual = std::max(out.max_residual, sol.residual);
    }
    return out;
}

void write_recovered_potential(std::ostream& out, const RecoveredPotential& r) {
    const auto old = out.precision(17);
    out << "# recovered potential: split " << r.split << " stitch_residual " << r.stitch_residual
        << " max_condition " << r.max_condition << '\n';
    out << "# x component q side(+1: a0 from system A, -1: b0 from system B)\n";
    for (std::size_t i = 0; i < r.x.size(); ++i)
        out << r.x[i] << ' ' << r.component[i] << ' ' << r.q[i] << ' ' << r.side[i] << '\n';
    out.precision(old);
}

void save_recovered_potential(const std::string& path, const RecoveredPotential& r) {
    std::ofstream out(path);
    if (!out)
        fail(ErrorKind::io, "cannot write '", path, "'");
    write_recovered_potential(out, r);
}

SplitMode parse_split_mode(const std::string& name) {
    if (name == "adaptive")
        return SplitMode::adaptive;
    if (name == "origin")
        return SplitMode::origin;
    if (name == "mirrored")
        return SplitMode::mirrored;
    fail(ErrorKind::input, "unknown split mode '", name, "' (adaptive, origin, mirrored)");
}

std::string to_string(SplitMode mode) {
    switch (mode) {
    case SplitMode::adaptive: return "adaptive";
    case SplitMode::origin: return "origin";
    case SplitMode::mirrored: return "mirrored";
    }
    return "adaptive";
}

} // namespace istm
