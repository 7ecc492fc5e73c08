#pragma once

// Reference computations that share no code path with the library's series machinery:
// direct complex ODE integration, closed forms and independent quadrature.

#include "istm/potential.hpp"

#include <complex>
#include <functional>

namespace istm::validation {

using complex = std::complex<double>;

struct ComplexPair {
    complex value;
    complex derivative;
};

/// e(ρ, x): integrates y'' = (q - ρ²) y from x = b (where y = e^{iρx}) down to x with
/// classical RK4 at the given step. q is taken as zero beyond [-b, b].
ComplexPair jost_right(const RealFunction& q, double b, complex rho, double x, double step = 1e-3);

/// g(ρ, x): the same from x = -b with y = e^{-iρx}.
ComplexPair jost_left(const RealFunction& q, double b, complex rho, double x, double step = 1e-3);

/// W[e, g] at x = 0, which equals -2iρ a(ρ).
complex jost_wronskian(const RealFunction& q, double b, complex rho, double step = 1e-3);

/// s⁺(ρ) = -W[e(-ρ), g(ρ)] / W[e(ρ), g(ρ)] for real ρ ≠ 0.
complex reflection_right(const RealFunction& q, double b, double rho, double step = 1e-3);

/// Closed-form Jost solution of the one-soliton potential -2κ² sech²(κx):
/// e(ρ, x) = e^{iρx}(iρ - κ tanh κx)/(iρ - κ).
ComplexPair soliton_jost(double kappa, complex rho, double x);

/// Number of bound states below -energy_gap, from the zeros of the solution that decays at
/// -∞ (Sturm oscillation), including the analytically counted zero beyond x = b.
int sturm_count(const RealFunction& q, double b, double energy_gap = 1e-6, double step = 1e-3);

/// ∫_ℝ f(ρ) dρ by adaptive Gauss–Kronrod on the infinite line.
complex real_line_integral(const std::function<complex(double)>& f, double tolerance = 1e-12);

} // namespace istm::validation
