#pragma once

#include "istm/numerics/grid.hpp"
#include "istm/potential.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace istm {

/// right: the half line [0, b] where e(i/2, x) lives; left: [-b, 0] for g(i/2, x).
enum class Side { right, left };

/// Jost solution at ρ = i/2 on one half line. Besides e(i/2,x) (or g) the scaled form
/// u = e^{x/2}e (or v = e^{-x/2}g) is kept: it equals a₀+1 (b₀+1) and stays O(1) at ±b.
struct JostHalf {
    Side side = Side::right;
    numerics::UniformGrid grid{0.0, 1.0, 6};
    std::vector<double> value;             // e(i/2, x) or g(i/2, x)
    std::vector<double> derivative;
    std::vector<double> scaled;            // u or v
    std::vector<double> scaled_derivative;
    double ode_residual = 0.0;             // max |y'' - (q + 1/4) y| / max|y| at interior nodes
};

/// η on [0, b] or ξ on [-b, 0], with W[e, η] = 1 and W[g, ξ] = -1.
struct SecondSolution {
    Side side = Side::right;
    std::vector<double> value;
    std::vector<double> derivative;
    std::vector<double> scaled;            // P = e^{x/2}η or Q = e^{-x/2}ξ
    std::vector<double> scaled_derivative;
    bool fallback = false;                 // built from a second Cauchy problem, not the Abel integral
};

struct JostBase {
    JostHalf e_half;
    JostHalf g_half;
    SecondSolution eta;
    SecondSolution xi;
};

/// Solves -y'' + q y + y/4 = 0 from the far end of the half line with the decaying
/// asymptotics e^{∓x/2}. Internally integrates the scaled equation for u (or v).
JostHalf solve_jost_half(const Potential& q, Side side, int substeps = 2);

/// Abel construction η = e∫₀ˣ dt/e², ξ = g∫ₓ⁰ dt/g². When the Jost half has a zero and
/// allow_fallback is set, a second Cauchy problem with the same Wronskian is solved instead;
/// otherwise a singular-Abel error is raised.
SecondSolution second_solution(const Potential& q, const JostHalf& jost, bool allow_fallback = true,
                               int substeps = 2);

JostBase build_jost_base(const Potential& q, bool allow_fallback = true, int substeps = 2);

/// W[y1, y2] = y1 y2' - y1' y2 at every node.
std::vector<double> wronskian(const JostHalf& jost, const SecondSolution& second);

struct Seeds {
    std::vector<double> a0, a0_prime, d0; // on [0, b]
    std::vector<double> b0, b0_prime, c0; // on [-b, 0]
};

Seeds seed_coefficients(const JostBase& base, const Potential& q, const TailIntegrals& tails);

/// Coefficients of one side for n = 0..N on that side's half grid. For the right side
/// `value` holds a_n, `companion` d_n, and `aux1/aux2` J₁ₙ, J₂ₙ; for the left side b_n, c_n,
/// I₁ₙ, I₂ₙ.
struct SideTables {
    Side side = Side::right;
    numerics::UniformGrid grid{0.0, 1.0, 6};
    std::vector<std::vector<double>> value;
    std::vector<std::vector<double>> derivative;
    std::vector<std::vector<double>> companion;
    std::vector<std::vector<double>> aux1;
    std::vector<std::vector<double>> aux2;

    /// Node index of x = 0.
    std::size_t origin() const { return side == Side::right ? 0 : grid.count() - 1; }
};

struct CoefficientTables {
    int N = 0;
    SideTables right;
    SideTables left;
    std::vector<std::string> warnings;
};

CoefficientTables recurse_coefficients(const JostBase& base, const Seeds& seeds, int N);

/// Convenience: potential → tails → Jost base → seeds → tables.
CoefficientTables compute_coefficients(const Potential& q, int N, bool allow_fallback = true);

/// max_x |Σ_{n≤N} a_n(x) - ½∫_x^∞ q| over [0, b] (right) or the b_n analogue (left).
double partial_sum_residual(const SideTables& tables, const Potential& q, const TailIntegrals& tails, int upto);

/// Columnar dump: for each side a block "x  value_0..N  derivative_0..N  companion_0..N".
void write_coefficient_tables(std::ostream& out, const CoefficientTables& tables);

} // namespace istm
