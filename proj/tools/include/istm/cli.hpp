#pragma once

#include "istm/glm.hpp"

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace istm::cli {

/// Bad invocation or configuration (exit status 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    std::string potential = "gaussian-odd"; // built-in name or two-column data file
    double c = 3.14159265358979323846;      // soliton speed
    double b = 12.0;
    std::size_t nodes = 4801;
    int N = 64;
    int Ns = 5;
    std::size_t theta_count = 10000;
    std::vector<double> times{0.0};
    double window_lo = -5.0;
    double window_hi = 7.0;
    bool window_set = false;
    double spacing = 0.02;
    SplitMode split = SplitMode::adaptive;
    std::string out = ".";
    std::string data;             // scattering data input for evolve/invert
    bool dump_coefficients = false;
    bool verbose = false;
};

/// Applies `key = value` lines (blank lines and '#' comments allowed) on top of `config`.
void apply_config_text(std::istream& in, RunConfig& config);
void apply_config_file(const std::string& path, RunConfig& config);

/// Sets one configuration key; throws UsageError naming the key on an unknown key or a
/// malformed value.
void set_key(RunConfig& config, const std::string& key, const std::string& value);

/// Parses "0,0.5,1" into a sorted list.
std::vector<double> parse_times(const std::string& csv);

/// Checks counts, window and times; fills the window default for the piecewise preset.
void finalize(RunConfig& config);

void print_config(std::ostream& out, const RunConfig& config);

/// Entry point: 0 success, 1 usage error, 2 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace istm::cli
