#pragma once

#include "istm/numerics/grid.hpp"

#include <functional>
#include <string>
#include <vector>

namespace istm {

using RealFunction = std::function<double(double)>;

/// The initial datum q(x), sampled on a uniform grid over [-b, b]. Beyond ±b the
/// potential is taken to be zero.
class Potential {
public:
    static constexpr double default_support = 12.0;
    static constexpr std::size_t default_nodes = 4801;
    static constexpr double default_tail_threshold = 1e-4;

    Potential(RealFunction evaluator, double support_radius, std::size_t node_count, std::string name = "custom",
              double tail_threshold = default_tail_threshold);

    double operator()(double x) const { return evaluator_(x); }
    const RealFunction& evaluator() const noexcept { return evaluator_; }
    double support_radius() const noexcept { return support_; }
    const numerics::UniformGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& samples() const noexcept { return samples_; }
    const std::string& name() const noexcept { return name_; }

    /// max(|q(-b)|, |q(b)|): the size of the neglected tail at the truncation points.
    double endpoint_magnitude() const noexcept { return endpoint_magnitude_; }
    double tail_threshold() const noexcept { return tail_threshold_; }
    bool tail_below_threshold() const noexcept { return endpoint_magnitude_ <= tail_threshold_; }

    /// Index of the node x = 0.
    std::size_t origin_index() const noexcept { return (grid_.count() - 1) / 2; }

private:
    RealFunction evaluator_;
    double support_;
    numerics::UniformGrid grid_;
    std::vector<double> samples_;
    std::string name_;
    double tail_threshold_;
    double endpoint_magnitude_;
};

/// Samples the evaluator on node_count nodes of [-b, b]. node_count must be odd (so that
/// x = 0 is a node) and at least 101.
Potential build_potential(RealFunction evaluator, double b = Potential::default_support,
                          std::size_t node_count = Potential::default_nodes, std::string name = "custom");

namespace presets {
double zero(double x);
double gaussian_odd(double x);       // x·exp(-x²)
double soliton(double c, double x);  // -(c/2)·sech²(√c·x/2)
double piecewise(double x);          // e^x·cos 4x for x < 0, e^{-x}·J₀(2x) for x >= 0
} // namespace presets

/// Builds a named preset: "zero", "gaussian-odd", "soliton" (uses c) or "piecewise".
Potential builtin_potential(const std::string& name, double c, double b = Potential::default_support,
                            std::size_t node_count = Potential::default_nodes);

/// Reads two whitespace-separated columns (x, q) and interpolates them with a cubic
/// spline; q is zero outside the tabulated range. Lines starting with '#' are skipped.
RealFunction load_potential_table(const std::string& path);

struct FaddeevReport {
    double alpha = 1.0;
    double interior = 0.0;      // ∫_{-b}^{b} (1+|x|)^α |q| dx
    double tail_estimate = 0.0; // extrapolated contribution from |x| > b
    bool convergent = true;
};

/// Estimates ∫(1+|x|)^α |q| dx. The tail beyond ±b is extrapolated from an exponential
/// fit to |q| over the last unit of the grid on each side; the report flags divergence when
/// the fit does not decay or the tail exceeds a tenth of the interior value.
FaddeevReport check_faddeev(const Potential& q, double alpha = 1.0);

/// Tail integrals tabulated on the potential grid.
struct TailIntegrals {
    std::vector<double> right; // ∫_x^∞ q dt
    std::vector<double> left;  // ∫_{-∞}^x q dt
    double total = 0.0;        // ∫ q over [-b, b]
};

TailIntegrals tail_integrals(const Potential& q);

} // namespace istm
