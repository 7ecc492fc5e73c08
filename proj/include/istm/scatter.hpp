#pragma once

#include "istm/jost.hpp"
#include "istm/potential.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace istm {

using complex = std::complex<double>;

/// Coefficient values at x = 0 that feed the z-series for e, g, E and G.
struct SeriesAtOrigin {
    std::vector<double> a, b, c, d;
    double right_tail = 0.0; // ∫_0^∞ q
    double left_tail = 0.0;  // ∫_{-∞}^0 q

    int order() const { return static_cast<int>(a.size()) - 1; }
};

SeriesAtOrigin series_at_origin(const CoefficientTables& tables, const Potential& q, const TailIntegrals& tails);

/// Möbius pair z = (1/2 + iρ)/(1/2 - iρ), ρ = i(1 - z)/(2(1 + z)).
struct MobiusPoint {
    complex z;
    complex rho;

    static MobiusPoint from_rho(complex rho);
    static MobiusPoint from_z(complex z);
};

enum class SeriesKind { e, g, E, G };

complex eval_series(const SeriesAtOrigin& s, SeriesKind which, complex z);
complex eval_series_derivative(const SeriesAtOrigin& s, SeriesKind which, complex z);

/// Φ = eG - Eg and its z-derivative.
complex eval_phi(const SeriesAtOrigin& s, complex z);
complex eval_phi_prime(const SeriesAtOrigin& s, complex z);

struct Eigenvalue {
    double z = 0.0;
    double tau = 0.0;
    double lambda = 0.0;
};

struct NormingConstant {
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double d = 0.0;
};

struct EigenSearch {
    double edge = 1e-6;          // search on (-1 + edge, 1 - edge)
    std::size_t scan_count = 2048;
    double tolerance = 1e-13;    // on Φ/((|e| + |E|)(|g| + |G|))
};

/// Zeros of Φ on (-1, 1), sorted by increasing τ. Roots within one scan step of the
/// interval ends are kept but reported through `warnings`.
std::vector<Eigenvalue> find_eigenvalues(const SeriesAtOrigin& s, const EigenSearch& opts = {},
                                         std::vector<std::string>* warnings = nullptr);

std::vector<NormingConstant> norming_constants(const SeriesAtOrigin& s, const std::vector<Eigenvalue>& eigen);

struct ReflectionSamples {
    std::vector<double> theta;
    std::vector<complex> plus;
    std::vector<complex> minus;
};

ReflectionSamples reflection_coefficients(const SeriesAtOrigin& s, const std::vector<double>& theta,
                                          std::vector<std::string>* warnings = nullptr);

/// ρ(θ) = tan(θ/2)/2, the real spectral parameter at z = e^{iθ}.
double rho_of_theta(double theta);

struct ScatteringData {
    double t = 0.0;
    std::vector<Eigenvalue> eigen;
    std::vector<NormingConstant> norming;
    std::vector<double> theta;
    std::vector<complex> s_plus;
    std::vector<complex> s_minus;
};

struct DirectOptions {
    int N = 64;
    std::size_t theta_count = 10000;
    EigenSearch search{};
    bool allow_fallback = true;
};

struct DirectResult {
    ScatteringData data;
    SeriesAtOrigin series;
    CoefficientTables tables;
    std::vector<std::string> warnings;
};

/// Full direct stage: coefficients, eigenvalues, norming constants and reflection samples
/// on the midpoint θ grid.
DirectResult direct_scattering(const Potential& q, const DirectOptions& opts = {});

/// Applies the KdV evolution law for an additional time span dt ≥ 0.
ScatteringData evolve(const ScatteringData& data, double dt);

void write_scattering_data(std::ostream& out, const ScatteringData& data);
ScatteringData read_scattering_data(std::istream& in);
void save_scattering_data(const std::string& path, const ScatteringData& data);
ScatteringData load_scattering_data(const std::string& path);

} // namespace istm
