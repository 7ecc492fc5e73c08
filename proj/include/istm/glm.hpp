#pragma once

#include "istm/scatter.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace istm {

/// plus: system A (a₀ from s⁺, α⁺); minus: system B (b₀ from s⁻, α⁻).
enum class SystemSide { plus, minus };

/// ∫_{-π}^{π} s(θ) exp(±((z-1)/(z+1))x) z^{m+1} (z+1)^{n_power-m-2} dθ, z = e^{iθ}, by the
/// periodic trapezoid rule on the midpoint nodes the samples were taken at.
complex circle_kernel_integral(std::span<const double> theta, std::span<const complex> samples, double x, int m,
                               int n_power, SystemSide sign);

/// All circle integrals one x needs, computed in a single pass over θ:
/// hankel[p] = (1/2π)∫ w z^{p+1} dθ (the A_mn/B_mn part with p = m+n) and
/// rhs[m] = (1/2π)∫ w z^{m+1}/(z+1) dθ (the r_m/s_m part), where w = s·exp(±2iρx).
struct CircleMoments {
    std::vector<complex> hankel;
    std::vector<complex> rhs;
};

CircleMoments circle_moments(const ScatteringData& data, double x, SystemSide side, int max_hankel, int max_rhs);

struct TruncatedSystem {
    double x = 0.0;
    SystemSide side = SystemSide::plus;
    Eigen::MatrixXd matrix; // I + A (or I + B)
    Eigen::VectorXd rhs;    // r (or s)
    double imaginary_residue = 0.0;
};

/// Builds the (size)×(size) finite section, size = N_s + 1.
TruncatedSystem assemble_system(const ScatteringData& data, double x, int Ns, SystemSide side);

struct SolveResult {
    double value = 0.0;     // component 0: a₀(x) or b₀(x)
    double residual = 0.0;  // ‖M sol - rhs‖∞
    double condition = 0.0; // 2-norm condition number
    Eigen::VectorXd solution;
};

SolveResult solve_first_component(const TruncatedSystem& system, double max_condition = 1e12);

/// How the line is divided between the two systems.
///  adaptive: A right of a split point chosen from the truncation residuals, B left of it.
///  origin:   A on x ≥ 0, B on x ≤ 0.
///  mirrored: A on x ≤ 0, B on x ≥ 0.
enum class SplitMode { adaptive, origin, mirrored };

struct RecoveryOptions {
    int Ns = 5;
    double spacing = 0.02;
    double margin = 0.2;      // extra solves beyond the window and across the split for the splines
    int spline_order = 6;
    SplitMode split = SplitMode::adaptive;
    double max_condition = 1e12;
};

struct RecoveredPotential {
    std::vector<double> x;
    std::vector<double> component; // a₀ where side = +1, b₀ where side = -1
    std::vector<double> q;
    std::vector<int> side;
    double split = 0.0;
    double stitch_residual = 0.0;
    double max_condition = 0.0;
    double max_residual = 0.0;
};

/// Recovers q on [lo, hi] with nodes spaced `spacing` apart.
RecoveredPotential recover_potential(const ScatteringData& data, double lo, double hi,
                                     const RecoveryOptions& opts = {});

void write_recovered_potential(std::ostream& out, const RecoveredPotential& r);
void save_recovered_potential(const std::string& path, const RecoveredPotential& r);

SplitMode parse_split_mode(const std::string& name);
std::string to_string(SplitMode mode);

} // namespace istm
