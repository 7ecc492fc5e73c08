#include "istm/scatter.hpp"

#include "istm/error.hpp"
#include "istm/numerics/quadrature.hpp"
#include "istm/numerics/roots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace istm {
namespace {

const complex I{0.0, 1.0};

// Σ c_n w^n and its w-derivative by Horner's rule.
void horner(const std::vector<double>& c, complex w, complex& value, complex& slope) {
    value = 0.0;
    slope = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        slope = slope * w + value;
        value = value * w + *it;
    }
}

const std::vector<double>& coefficients(const SeriesAtOrigin& s, SeriesKind which) {
    switch (which) {
    case SeriesKind::e: return s.a;
    case SeriesKind::g: return s.b;
    case SeriesKind::E: return s.d;
    case SeriesKind::G: return s.c;
    }
    return s.a;
}

void check_pole(SeriesKind which, complex z) {
    if ((which == SeriesKind::E || which == SeriesKind::G) && z == complex(-1.0, 0.0))
        fail(ErrorKind::pole, "E and G have a pole at z = -1");
}

} // namespace

SeriesAtOrigin series_at_origin(const CoefficientTables& tables, const Potential& q, const TailIntegrals& tails) {
    SeriesAtOrigin s;
    const std::size_t r0 = tables.right.origin();
    const std::size_t l0 = tables.left.origin();
    for (int n = 0; n <= tables.N; ++n) {
        const auto k = static_cast<std::size_t>(n);
        s.a.push_back(tables.right.value[k][r0]);
        s.d.push_back(tables.right.companion[k][r0]);
        s.b.push_back(tables.left.value[k][l0]);
        s.c.push_back(tables.left.companion[k][l0]);
    }
    s.right_tail = tails.right[q.origin_index()];
    s.left_tail = tails.left[q.origin_index()];
    return s;
}

MobiusPoint MobiusPoint::from_rho(complex rho) {
    const complex den = 0.5 - I * rho;
    if (den == complex(0.0, 0.0))
        fail(ErrorKind::pole, "ρ = -i/2 maps to z = ∞");
    return {(0.5 + I * rho) / den, rho};
}

MobiusPoint MobiusPoint::from_z(complex z) {
    if (z == complex(-1.0, 0.0))
        fail(ErrorKind::pole, "z = -1 maps to ρ = ∞");
    return {z, I * (1.0 - z) / (2.0 * (1.0 + z))};
}

complex eval_series(const SeriesAtOrigin& s, SeriesKind which, complex z) {
    check_pole(which, z);
    complex sum, slope;
    horner(coefficients(s, which), -z, sum, slope);
    const complex body = (z + 1.0) * sum;
    switch (which) {
    case SeriesKind::e:
    case SeriesKind::g: return 1.0 + body;
    case SeriesKind::E: return (z - 1.0) / (2.0 * (z + 1.0)) - s.right_tail / 2.0 + body;
    case SeriesKind::G: return -(z - 1.0) / (2.0 * (z + 1.0)) + s.left_tail / 2.0 + body;
    }
    return body;
}

complex eval_series_derivative(const SeriesAtOrigin& s, SeriesKind which, complex z) {
    check_pole(which, z);
    complex sum, slope;
    horner(coefficients(s, which), -z, sum, slope);
    const complex body = sum - (z + 1.0) * slope;
    const complex pole = 1.0 / ((z + 1.0) * (z + 1.0));
    switch (which) {
    case SeriesKind::e:
    case SeriesKind::g: return body;
    case SeriesKind::E: return pole + body;
    case SeriesKind::G: return -pole + body;
    }
    return body;
}

complex eval_phi(const SeriesAtOrigin& s, complex z) {
    return eval_series(s, SeriesKind::e, z) * eval_series(s, SeriesKind::G, z) -
           eval_series(s, SeriesKind::E, z) * eval_series(s, SeriesKind::g, z);
}

complex eval_phi_prime(const SeriesAtOrigin& s, complex z) {
    const complex e = eval_series(s, SeriesKind::e, z), g = eval_series(s, SeriesKind::g, z);
    const complex E = eval_series(s, SeriesKind::E, z), G = eval_series(s, SeriesKind::G, z);
    const complex de = eval_series_derivative(s, SeriesKind::e, z);
    const complex dg = eval_series_derivative(s, SeriesKind::g, z);
    const complex dE = eval_series_derivative(s, SeriesKind::E, z);
    const complex dG = eval_series_derivative(s, SeriesKind::G, z);
    return de * G + e * dG - dE * g - E * dg;
}

std::vector<Eigenvalue> find_eigenvalues(const SeriesAtOrigin& s, const EigenSearch& opts,
                                         std::vector<std::string>* warnings) {
    // Φ scaled by (|e|+|E|)(|g|+|G|), which stays away from 0 since e and E never vanish together.
    const auto normalized = [&s](double z) {
        const complex e = eval_series(s, SeriesKind::e, z), g = eval_series(s, SeriesKind::g, z);
        const complex E = eval_series(s, SeriesKind::E, z), G = eval_series(s, SeriesKind::G, z);
        const double scale = (std::abs(e) + std::abs(E)) * (std::abs(g) + std::abs(G));
        const double phi = (e * G - E * g).real();
        return scale > 0.0 ? phi / scale : phi;
    };
    const numerics::Interval range{-1.0 + opts.edge, 1.0 - opts.edge};
    const auto roots = numerics::bracketed_roots(normalized, range, opts.scan_count, opts.tolerance);
    const double step = (range.upper - range.lower) / static_cast<double>(opts.scan_count - 1);
    std::vector<Eigenvalue> out;
    for (double z : roots) {
        if (warnings && (z - range.lower < step || range.upper - z < step)) {
            std::ostringstream os;
            os.precision(17);
            os << "eigenvalue root z = " << z << " lies within one scan step of the search interval edge";
            warnings->push_back(os.str());
        }
        const double tau = (1.0 - z) / (2.0 * (1.0 + z));
        out.push_back({z, tau, -tau * tau});
    }
    std::sort(out.begin(), out.end(), [](const Eigenvalue& l, const Eigenvalue& r) { return l.tau < r.tau; });
    return out;
}

std::vector<NormingConstant> norming_constants(const SeriesAtOrigin& s, const std::vector<Eigenvalue>& eigen) {
    constexpr double simple_zero_guard = 1e-8;
    constexpr double imaginary_tolerance = 1e-8;
    std::vector<NormingConstant> out;
    for (const auto& ev : eigen) {
        const complex z = ev.z;
        const complex dphi = eval_phi_prime(s, z);
        if (std::abs(dphi) < simple_zero_guard)
            fail(ErrorKind::degenerate_eigenvalue, "|Φ'(z)| = ", std::abs(dphi), " at z = ", ev.z);
        const complex d = eval_series(s, SeriesKind::g, z) / eval_series(s, SeriesKind::e, z);
        const complex r = (z + 1.0) / (z - 1.0);
        const complex a_prime = 2.0 * I * r * r * eval_phi(s, z) - I * std::pow(z + 1.0, 3) / (z - 1.0) * dphi;
        const complex plus = d / (I * a_prime);
        const complex minus = 1.0 / (d * I * a_prime);
        if (std::abs(plus.imag()) > imaginary_tolerance || std::abs(minus.imag()) > imaginary_tolerance)
            fail(ErrorKind::consistency, "norming constant not real at z = ", ev.z, ": ", plus, ", ", minus);
        if (!(plus.real() > 0.0) || !(minus.real() > 0.0))
            fail(ErrorKind::consistency, "nonpositive norming constant at z = ", ev.z, ": α+ = ", plus.real(),
                 ", α- = ", minus.real());
        out.push_back({plus.real(), minus.real(), d.real()});
    }
    return out;
}

double rho_of_theta(double theta) { return std::tan(theta / 2.0) / 2.0; }

ReflectionSamples reflection_coefficients(const SeriesAtOrigin& s, const std::vector<double>& theta,
                                          std::vector<std::string>* warnings) {
    ReflectionSamples out;
    out.theta = theta;
    out.plus.resize(theta.size());
    out.minus.resize(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        const complex z = std::polar(1.0, theta[j]);
        const complex zb = std::conj(z);
        const complex e = eval_series(s, SeriesKind::e, z), g = eval_series(s, SeriesKind::g, z);
        const complex E = eval_series(s, SeriesKind::E, z), G = eval_series(s, SeriesKind::G, z);
        const complex eb = eval_series(s, SeriesKind::e, zb), gb = eval_series(s, SeriesKind::g, zb);
        const complex Eb = eval_series(s, SeriesKind::E, zb), Gb = eval_series(s, SeriesKind::G, zb);
        const complex phi = e * G - E * g;
        if (std::abs(phi) < 1e-12 && warnings) {
            std::ostringstream os;
            os.precision(17);
            os << "|Φ| = " << std::abs(phi) << " on the circle at θ = " << theta[j];
            warnings->push_back(os.str());
        }
        out.plus[j] = -(eb * G - Eb * g) / phi;
        out.minus[j] = -(e * Gb - E * gb) / phi;
        if (!std::isfinite(out.plus[j].real()) || !std::isfinite(out.plus[j].imag()) ||
            !std::isfinite(out.minus[j].real()) || !std::isfinite(out.minus[j].imag()))
            fail(ErrorKind::evaluation, "reflection coefficient not finite at θ = ", theta[j]);
    }
    return out;
}

DirectResult direct_scattering(const Potential& q, const DirectOptions& opts) {
    DirectResult r;
    const auto tails = tail_integrals(q);
    r.tables = compute_coefficients(q, opts.N, opts.allow_fallback);
    r.warnings = r.tables.warnings;
    r.series = series_at_origin(r.tables, q, tails);
    r.data.t = 0.0;
    r.data.eigen = find_eigenvalues(r.series, opts.search, &r.warnings);
    r.data.norming = norming_constants(r.series, r.data.eigen);
    auto refl = reflection_coefficients(r.series, numerics::periodic_nodes(opts.theta_count), &r.warnings);
    r.data.theta = std::move(refl.theta);
    r.data.s_plus = std::move(refl.plus);
    r.data.s_minus = std::move(refl.minus);
    return r;
}

ScatteringData evolve(const ScatteringData& data, double dt) {
    if (!(dt >= 0.0) || !std::isfinite(dt))
        fail(ErrorKind::input, "evolution time must be finite and nonnegative, got ", dt);
    ScatteringData out = data;
    out.t = data.t + dt;
    if (dt == 0.0)
        return out;
    for (std::size_t k = 0; k < out.norming.size(); ++k) {
        const double tau = out.eigen[k].tau;
        const double growth = 8.0 * tau * tau * tau * dt;
        auto& n = out.norming[k];
        n.alpha_plus = std::exp(std::log(n.alpha_plus) + growth);
        n.alpha_minus = std::exp(std::log(n.alpha_minus) - growth);
        if (!std::isfinite(n.alpha_plus) || !(n.alpha_minus > 0.0))
            fail(ErrorKind::range, "norming constant out of range at t = ", out.t, " (8τ³t = ", 8.0 * tau * tau * tau * out.t,
                 "); evolve a rescaled quantity such as log α instead");
        n.d = std::sqrt(n.alpha_plus / n.alpha_minus);
    }
    for (std::size_t j = 0; j < out.theta.size(); ++j) {
        const double rho = rho_of_theta(out.theta[j]);
        const double phase = 8.0 * rho * rho * rho * dt;
        out.s_plus[j] *= std::polar(1.0, phase);
        out.s_minus[j] *= std::polar(1.0, -phase);
    }
    return out;
}

void write_scattering_data(std::ostream& out, const ScatteringData& data) {
    const auto old = out.precision(17);
    out << "# scattering data\n";
    out << "t " << data.t << '\n';
    out << "eigen " << data.eigen.size() << '\n';
    out << "# z tau lambda alpha_plus alpha_minus\n";
    for (std::size_t k = 0; k < data.eigen.size(); ++k) {
        const auto& e = data.eigen[k];
        const auto& n = data.norming[k];
        out << e.z << ' ' << e.tau << ' ' << e.lambda << ' ' << n.alpha_plus << ' ' << n.alpha_minus << '\n';
    }
    out << "reflection " << data.theta.size() << '\n';
    out << "# theta re_s_plus im_s_plus re_s_minus im_s_minus\n";
    for (std::size_t j = 0; j < data.theta.size(); ++j)
        out << data.theta[j] << ' ' << data.s_plus[j].real() << ' ' << data.s_plus[j].imag() << ' '
            << data.s_minus[j].real() << ' ' << data.s_minus[j].imag() << '\n';
    out.precision(old);
}

namespace {

// Next non-comment, non-blank line.
bool content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto p = line.find_first_not_of(" \t\r");
        if (p != std::string::npos && line[p] != '#')
            return true;
    }
    return false;
}

std::size_t read_count(std::istream& in, const std::string& key) {
    std::string line, word;
    std::size_t n = 0;
    if (!content_line(in, line))
        fail(ErrorKind::io, "scattering data: missing '", key, "' line");
    std::istringstream row(line);
    if (!(row >> word >> n) || word != key)
        fail(ErrorKind::io, "scattering data: expected '", key, " <count>', got '", line, "'");
    return n;
}

} // namespace

ScatteringData read_scattering_data(std::istream& in) {
    ScatteringData d;
    std::string line, word;
    if (!content_line(in, line))
        fail(ErrorKind::io, "scattering data: empty input");
    {
        std::istringstream row(line);
        if (!(row >> word >> d.t) || word != "t")
            fail(ErrorKind::io, "scattering data: expected 't <time>', got '", line, "'");
    }
    const std::size_t k = read_count(in, "eigen");
    for (std::size_t i = 0; i < k; ++i) {
        Eigenvalue e;
        NormingConstant n;
        if (!content_line(in, line))
            fail(ErrorKind::io, "scattering data: eigenvalue block truncated");
        std::istringstream row(line);
        if (!(row >> e.z >> e.tau >> e.lambda >> n.alpha_plus >> n.alpha_minus))
            fail(ErrorKind::io, "scattering data: malformed eigenvalue line '", line, "'");
        n.d = std::sqrt(n.alpha_plus / n.alpha_minus);
        d.eigen.push_back(e);
        d.norming.push_back(n);
    }
    const std::size_t m = read_count(in, "reflection");
    d.theta.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        double th = 0, pr = 0, pi = 0, mr = 0, mi = 0;
        if (!content_line(in, line))
            fail(ErrorKind::io, "scattering data: reflection block truncated at row ", j);
        std::istringstream row(line);
        if (!(row >> th >> pr >> pi >> mr >> mi))
            fail(ErrorKind::io, "scattering data: malformed reflection line '", line, "'");
        d.theta.push_back(th);
        d.s_plus.emplace_back(pr, pi);
        d.s_minus.emplace_back(mr, mi);
    }
    return d;
}

void save_scattering_data(const std::string& path, const ScatteringData& data) {
    std::ofstream out(path);
    if (!out)
        fail(ErrorKind::io, "cannot write '", path, "'");
    write_scattering_data(out, data);
}

ScatteringData load_scattering_data(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::io, "cannot open scattering data file '", path, "'");
    return read_scattering_data(in);
}

} // namespace istm
