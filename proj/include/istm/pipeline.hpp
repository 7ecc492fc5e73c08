#pragma once

#include "istm/glm.hpp"
#include "istm/potential.hpp"
#include "istm/scatter.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace istm {

/// KdV u_t - 6uu_x + u_xxx = 0 with u(x, 0) = q(x).
struct CauchyProblem {
    Potential potential;
    std::vector<double> times{0.0};
    double x_lo = -5.0;
    double x_hi = 7.0;
    DirectOptions direct{};
    RecoveryOptions recovery{};
};

struct TimeDiagnostics {
    double t = 0.0;
    double mass = 0.0;     // ∫u dx over the window
    double momentum = 0.0; // ∫u² dx over the window
    double max_condition = 0.0;
    double stitch_residual = 0.0;
    double split = 0.0;
    double seconds = 0.0;  // evolve + recovery wall clock
};

struct SolutionField {
    std::vector<double> x;
    std::vector<double> times;
    std::vector<std::vector<double>> u; // u[i][j] = u(x_j, times[i])
    std::vector<TimeDiagnostics> diagnostics;
    ScatteringData initial_data;
    double direct_seconds = 0.0;
    std::vector<std::string> warnings;
};

/// Direct stage once, then evolve + recover for every requested time. Stage failures are
/// rethrown with the stage name and time prepended.
SolutionField solve_cauchy(const CauchyProblem& problem);

/// Solitary wave -(c/2) sech²(√c (x - ct)/2).
double analytic_soliton(double c, double x, double t);

struct FieldReport {
    std::vector<TimeDiagnostics> per_time;
    double mass_drift = 0.0;     // max - min of mass over the output times
    double momentum_drift = 0.0;
    double max_condition = 0.0;
    double direct_seconds = 0.0;
};

/// Recomputes mass and momentum from the field and collects the stored per-time data.
FieldReport diagnostics(const SolutionField& field);

/// (a) wide matrix: first row "x x_0 x_1 ...", then one row "t u_0 u_1 ..." per time.
void write_solution_matrix(std::ostream& out, const SolutionField& field);
/// (b) two columns (x, u) for output time index i.
void write_solution_slice(std::ostream& out, const SolutionField& field, std::size_t i);
void write_diagnostics(std::ostream& out, const FieldReport& report);

} // namespace istm
