#include "istm/cli.hpp"

#include "istm/error.hpp"
#include "istm/pipeline.hpp"
#include "istm/validation/acceptance.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace istm::cli {
namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || trim(value.substr(used)) != "" || !std::isfinite(v))
        throw UsageError("malformed number for '" + key + "': '" + value + "'");
    return v;
}

long to_integer(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || trim(value.substr(used)) != "")
        throw UsageError("malformed integer for '" + key + "': '" + value + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on")
        return true;
    if (value == "0" || value == "false" || value == "no" || value == "off")
        return false;
    throw UsageError("malformed boolean for '" + key + "': '" + value + "'");
}

std::string time_tag(double t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

fs::path output_dir(const RunConfig& c) {
    fs::path dir(c.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        fail(ErrorKind::io, "cannot create output directory '", c.out, "': ", ec.message());
    return dir;
}

Potential make_potential(const RunConfig& c) {
    static const std::vector<std::string> builtins = {"zero", "gaussian-odd", "soliton", "piecewise"};
    if (std::find(builtins.begin(), builtins.end(), c.potential) != builtins.end())
        return builtin_potential(c.potential, c.c, c.b, c.nodes);
    if (!fs::exists(c.potential))
        throw UsageError("potential '" + c.potential + "' is neither a built-in (zero, gaussian-odd, soliton, "
                         "piecewise) nor an existing file");
    return build_potential(load_potential_table(c.potential), c.b, c.nodes, c.potential);
}

DirectOptions direct_options(const RunConfig& c) {
    DirectOptions o;
    o.N = c.N;
    o.theta_count = c.theta_count;
    return o;
}

RecoveryOptions recovery_options(const RunConfig& c) {
    RecoveryOptions o;
    o.Ns = c.Ns;
    o.spacing = c.spacing;
    o.split = c.split;
    return o;
}

void report_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings)
        err << "warning: " << w << '\n';
}

std::string data_path(const RunConfig& c) {
    return c.data.empty() ? (fs::path(c.out) / "scattering.txt").string() : c.data;
}

ScatteringData read_input_data(const RunConfig& c) {
    const auto path = data_path(c);
    if (!fs::exists(path))
        throw UsageError("scattering data file '" + path + "' not found (run 'direct' first or pass --data)");
    return load_scattering_data(path);
}

int cmd_direct(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto q = make_potential(c);
    const auto r = direct_scattering(q, direct_options(c));
    const auto dir = output_dir(c);
    save_scattering_data((dir / "scattering.txt").string(), r.data);
    if (c.dump_coefficients) {
        std::ofstream f(dir / "coefficients.txt");
        write_coefficient_tables(f, r.tables);
    }
    if (c.verbose)
        report_warnings(err, r.warnings);
    out.precision(15);
    out << "eigenvalues: " << r.data.eigen.size() << '\n';
    for (std::size_t k = 0; k < r.data.eigen.size(); ++k)
        out << "  lambda = " << r.data.eigen[k].lambda << "  alpha+ = " << r.data.norming[k].alpha_plus
            << "  alpha- = " << r.data.norming[k].alpha_minus << '\n';
    out << "wrote " << (dir / "scattering.txt").string() << '\n';
    return 0;
}

int cmd_evolve(const RunConfig& c, std::ostream& out) {
    const auto data = read_input_data(c);
    const auto dir = output_dir(c);
    for (double t : c.times) {
        if (t < data.t)
            throw UsageError("cannot evolve data at t = " + time_tag(data.t) + " back to t = " + time_tag(t));
        const auto path = dir / ("scattering_t" + time_tag(t) + ".txt");
        save_scattering_data(path.string(), evolve(data, t - data.t));
        out << "wrote " << path.string() << '\n';
    }
    return 0;
}

int cmd_invert(const RunConfig& c, std::ostream& out) {
    const auto data = read_input_data(c);
    const auto rec = recover_potential(data, c.window_lo, c.window_hi, recovery_options(c));
    const auto dir = output_dir(c);
    save_recovered_potential((dir / "recovered.txt").string(), rec);
    out.precision(6);
    out << "t = " << data.t << ", split at x = " << rec.split << ", stitch residual " << rec.stitch_residual
        << ", max condition " << rec.max_condition << '\n';
    out << "wrote " << (dir / "recovered.txt").string() << '\n';
    return 0;
}

int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
    CauchyProblem p{make_potential(c)};
    p.times = c.times;
    p.x_lo = c.window_lo;
    p.x_hi = c.window_hi;
    p.direct = direct_options(c);
    p.recovery = recovery_options(c);
    const auto field = solve_cauchy(p);
    if (c.verbose)
        report_warnings(err, field.warnings);
    const auto dir = output_dir(c);
    save_scattering_data((dir / "scattering.txt").string(), field.initial_data);
    {
        std::ofstream f(dir / "solution.txt");
        write_solution_matrix(f, field);
    }
    for (std::size_t i = 0; i < field.times.size(); ++i) {
        std::ofstream f(dir / ("u_t" + time_tag(field.times[i]) + ".txt"));
        write_solution_slice(f, field, i);
    }
    const auto report = diagnostics(field);
    {
        std::ofstream f(dir / "diagnostics.txt");
        write_diagnostics(f, report);
    }
    write_diagnostics(out, report);
    out << "wrote " << (dir / "solution.txt").string() << " and " << field.times.size() << " per-time files\n";
    return 0;
}

int cmd_validate(std::ostream& out, std::ostream& err, bool verbose) {
    const auto results = validation::run_acceptance({}, verbose ? &err : nullptr);
    validation::print_report(out, results);
    return validation::all_passed(results) ? 0 : 2;
}

} // namespace

std::vector<double> parse_times(const std::string& csv) {
    std::vector<double> times;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        times.push_back(to_double("times", trim(item)));
    if (times.empty())
        throw UsageError("empty times list");
    std::sort(times.begin(), times.end());
    return times;
}

void set_key(RunConfig& c, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "potential")
        c.potential = value;
    else if (key == "c")
        c.c = to_double(key, value);
    else if (key == "b")
        c.b = to_double(key, value);
    else if (key == "nodes")
        c.nodes = static_cast<std::size_t>(std::max(0L, to_integer(key, value)));
    else if (key == "N")
        c.N = static_cast<int>(to_integer(key, value));
    else if (key == "Ns")
        c.Ns = static_cast<int>(to_integer(key, value));
    else if (key == "theta-count")
        c.theta_count = static_cast<std::size_t>(std::max(0L, to_integer(key, value)));
    else if (key == "times")
        c.times = parse_times(value);
    else if (key == "window") {
        const auto comma = value.find(',');
        if (comma == std::string::npos)
            throw UsageError("window must be 'LO,HI', got '" + value + "'");
        c.window_lo = to_double(key, trim(value.substr(0, comma)));
        c.window_hi = to_double(key, trim(value.substr(comma + 1)));
        c.window_set = true;
    } else if (key == "spacing")
        c.spacing = to_double(key, value);
    else if (key == "split") {
        try {
            c.split = parse_split_mode(value);
        } catch (const Error&) {
            throw UsageError("split must be adaptive, origin or mirrored, got '" + value + "'");
        }
    } else if (key == "out")
        c.out = value;
    else if (key == "data")
        c.data = value;
    else if (key == "dump-coefficients")
        c.dump_coefficients = to_bool(key, value);
    else if (key == "verbose")
        c.verbose = to_bool(key, value);
    else
        throw UsageError("unknown configuration key '" + key + "'");
}

void apply_config_text(std::istream& in, RunConfig& c) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no) + " is not 'key = value': '" + body + "'");
        set_key(c, trim(body.substr(0, eq)), body.substr(eq + 1));
    }
}

void apply_config_file(const std::string& path, RunConfig& c) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file '" + path + "'");
    apply_config_text(in, c);
}

void finalize(RunConfig& c) {
    if (!c.window_set && c.potential == "piecewise") {
        c.window_lo = -7.0;
        c.window_hi = 7.0;
    }
    if (!(c.b > 0.0))
        throw UsageError("b must be positive");
    if (c.nodes < 101 || c.nodes % 2 == 0)
        throw UsageError("nodes must be odd and at least 101");
    if (c.N < 0)
        throw UsageError("N must be nonnegative");
    if (c.Ns < 0)
        throw UsageError("Ns must be nonnegative");
    if (c.theta_count < 16)
        throw UsageError("theta-count must be at least 16");
    if (!(c.spacing > 0.0))
        throw UsageError("spacing must be positive");
    if (c.c <= 0.0 && c.potential == "soliton")
        throw UsageError("c must be positive for the soliton");
    if (c.times.empty() || c.times.front() < 0.0)
        throw UsageError("times must be nonnegative");
    if (!(c.window_lo < c.window_hi))
        throw UsageError("window must satisfy LO < HI");
    const bool needs_support = c.subcommand == "solve";
    if (needs_support && !(c.window_lo > -c.b && c.window_hi < c.b))
        throw UsageError("window must lie inside (-b, b)");
}

void print_config(std::ostream& out, const RunConfig& c) {
    const auto old = out.precision(17);
    out << "subcommand = " << c.subcommand << '\n'
        << "potential = " << c.potential << '\n'
        << "c = " << c.c << '\n'
        << "b = " << c.b << '\n'
        << "nodes = " << c.nodes << '\n'
        << "N = " << c.N << '\n'
        << "Ns = " << c.Ns << '\n'
        << "theta-count = " << c.theta_count << '\n'
        << "times = ";
    for (std::size_t i = 0; i < c.times.size(); ++i)
        out << (i ? "," : "") << c.times[i];
    out << '\n'
        << "window = " << c.window_lo << ',' << c.window_hi << '\n'
        << "spacing = " << c.spacing << '\n'
        << "split = " << to_string(c.split) << '\n'
        << "out = " << c.out << '\n'
        << "data = " << data_path(c) << '\n'
        << "dump-coefficients = " << (c.dump_coefficients ? "true" : "false") << '\n';
    out.precision(old);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Inverse scattering transform solver for the KdV Cauchy problem", "istm"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::map<std::string, std::string> given;
    const std::vector<std::pair<std::string, std::string>> keyed = {
        {"potential", "built-in name (zero, gaussian-odd, soliton, piecewise) or two-column file"},
        {"c", "soliton speed"},
        {"b", "truncation half-width of the potential"},
        {"nodes", "potential grid nodes on [-b, b] (odd)"},
        {"N", "number of Fourier–Laguerre coefficients"},
        {"Ns", "equations in the truncated systems minus one"},
        {"theta-count", "reflection samples on the unit circle"},
        {"times", "comma-separated output times"},
        {"window", "recovery window LO,HI"},
        {"spacing", "recovery grid spacing"},
        {"split", "side selection: adaptive, origin or mirrored"},
        {"out", "output directory"},
        {"data", "scattering data input for evolve and invert"},
    };
    app.add_option("--config", config_path, "key = value configuration file");
    for (const auto& [key, help] : keyed)
        app.add_option("--" + key, given[key], help);
    bool dump = false, verbose = false;
    app.add_flag("--dump-coefficients", dump, "also write the coefficient tables (direct)");
    app.add_flag("--verbose", verbose, "echo the resolved configuration and warnings");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"direct", "compute scattering data of the potential"},
        {"evolve", "evolve scattering data to the requested times"},
        {"invert", "recover the potential from scattering data"},
        {"solve", "solve the Cauchy problem at the requested times"},
        {"validate", "run the acceptance suite"},
    };
    for (const auto& [name, help] : commands)
        app.add_subcommand(name, help);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i)
            args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    RunConfig config;
    try {
        if (!config_path.empty())
            apply_config_file(config_path, config);
        for (const auto& [key, help] : keyed)
            if (app.count("--" + key) > 0)
                set_key(config, key, given[key]);
        if (app.count("--dump-coefficients") > 0)
            config.dump_coefficients = dump;
        if (app.count("--verbose") > 0)
            config.verbose = verbose;
        config.subcommand = app.get_subcommands().front()->get_name();
        finalize(config);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 1;
    }
    if (config.verbose)
        print_config(err, config);

    try {
        const auto& cmd = config.subcommand;
        if (cmd == "direct")
            return cmd_direct(config, out, err);
        if (cmd == "evolve")
            return cmd_evolve(config, out);
        if (cmd == "invert")
            return cmd_invert(config, out);
        if (cmd == "solve")
            return cmd_solve(config, out, err);
        return cmd_validate(out, err, config.verbose);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return e.kind() == ErrorKind::input || e.kind() == ErrorKind::io ? 1 : 2;
    }
}

} // namespace istm::cli
