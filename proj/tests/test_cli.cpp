#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "istm/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace istm;
using namespace istm::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "istm");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), {}};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("istm_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("configuration text") {
    SUBCASE("empty text gives defaults") {
        RunConfig c;
        std::istringstream in("");
        apply_config_text(in, c);
        CHECK(c.b == 12.0);
        CHECK(c.N == 64);
        CHECK(c.Ns == 5);
        CHECK(c.theta_count == 10000);
        CHECK(c.nodes == 4801);
    }
    SUBCASE("keys, comments and blank lines") {
        RunConfig c;
        std::istringstream in("# run\npotential = soliton\n\nc = 2.5  # speed\nwindow = -3, 4\ntimes = 1,0,0.5\n");
        apply_config_text(in, c);
        CHECK(c.potential == "soliton");
        CHECK(c.c == 2.5);
        CHECK(c.window_lo == -3.0);
        CHECK(c.window_hi == 4.0);
        CHECK(c.times == std::vector<double>{0.0, 0.5, 1.0});
    }
    SUBCASE("unknown keys and bad numbers name the key") {
        RunConfig c;
        std::istringstream unknown("colour = blue\n");
        CHECK_THROWS_WITH_AS(apply_config_text(unknown, c), doctest::Contains("colour"), UsageError);
        std::istringstream bad("Ns = five\n");
        CHECK_THROWS_WITH_AS(apply_config_text(bad, c), doctest::Contains("Ns"), UsageError);
        std::istringstream trailing("b = 12x\n");
        CHECK_THROWS_WITH_AS(apply_config_text(trailing, c), doctest::Contains("'b'"), UsageError);
        std::istringstream noeq("just words\n");
        CHECK_THROWS_AS(apply_config_text(noeq, c), UsageError);
    }
    SUBCASE("times are sorted") {
        CHECK(parse_times("0,0.5,1") == std::vector<double>{0.0, 0.5, 1.0});
        CHECK(parse_times("1, 0") == std::vector<double>{0.0, 1.0});
        CHECK_THROWS_AS(parse_times("0,,1"), UsageError);
    }
    SUBCASE("finalize checks ranges and fills window defaults") {
        RunConfig c;
        c.potential = "piecewise";
        finalize(c);
        CHECK(c.window_lo == -7.0);
        CHECK(c.window_hi == 7.0);
        RunConfig even;
        even.nodes = 4800;
        CHECK_THROWS_AS(finalize(even), UsageError);
        RunConfig wide;
        wide.subcommand = "solve";
        wide.window_hi = 20.0;
        CHECK_THROWS_AS(finalize(wide), UsageError);
    }
}

TEST_CASE("flags override the config file") {
    auto dir = scratch("precedence");
    {
        std::ofstream f(dir / "run.cfg");
        f << "potential = zero\nNs = 5\ntheta-count = 500\n";
    }
    auto r = invoke({"direct", "--config", (dir / "run.cfg").string(), "--Ns", "9", "--out", dir.string(), "--verbose"});
    CHECK(r.status == 0);
    CHECK(r.err.find("Ns = 9") != std::string::npos);
    CHECK(r.err.find("potential = zero") != std::string::npos);
}

TEST_CASE("usage errors exit with status 1") {
    auto missing = invoke({"direct", "--config", "/nonexistent/run.cfg"});
    CHECK(missing.status == 1);
    CHECK(missing.err.find("Usage") != std::string::npos);
    CHECK(invoke({}).status == 1);
    CHECK(invoke({"frobnicate"}).status == 1);
    CHECK(invoke({"direct", "--N", "many"}).status == 1);
    CHECK(invoke({"direct", "--potential", "/nonexistent/table.txt"}).status == 1);
    CHECK(invoke({"--help"}).status == 0);
}

TEST_CASE("direct on the zero potential") {
    auto dir = scratch("zero");
    auto r = invoke({"direct", "--potential", "zero", "--theta-count", "200", "--out", dir.string()});
    REQUIRE(r.status == 0);
    auto data = load_scattering_data((dir / "scattering.txt").string());
    CHECK(data.eigen.empty());
    REQUIRE(data.s_plus.size() == 200);
    for (const auto& s : data.s_plus)
        CHECK(std::abs(s) < 1e-12);
    for (const auto& s : data.s_minus)
        CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("direct, evolve and invert files") {
    auto dir = scratch("chain");
    const std::vector<std::string> common = {"--potential", "soliton", "--theta-count", "2000",
                                             "--window", "-2,2", "--out", dir.string()};
    auto with = [&](std::vector<std::string> head) {
        head.insert(head.end(), common.begin(), common.end());
        return invoke(head);
    };
    REQUIRE(with({"direct", "--dump-coefficients"}).status == 0);
    CHECK(fs::exists(dir / "coefficients.txt"));
    const auto input = slurp(dir / "scattering.txt");

    REQUIRE(with({"evolve", "--times", "0,0.5"}).status == 0);
    CHECK(slurp(dir / "scattering_t0.txt") == input);
    CHECK(fs::exists(dir / "scattering_t0.5.txt"));

    REQUIRE(with({"invert"}).status == 0);
    const auto first = slurp(dir / "recovered.txt");
    REQUIRE(with({"direct"}).status == 0);
    REQUIRE(with({"invert"}).status == 0);
    CHECK(slurp(dir / "scattering.txt") == input);
    CHECK(slurp(dir / "recovered.txt") == first);

    auto back = with({"evolve", "--data", (dir / "scattering_t0.5.txt").string(), "--times", "0.25"});
    CHECK(back.status == 1);
}

TEST_CASE("solve writes the field, slices and diagnostics") {
    auto dir = scratch("solve");
    auto r = invoke({"solve", "--potential", "soliton", "--times", "0,0.5,1", "--out", dir.string()});
    REQUIRE(r.status == 0);
    for (const char* name : {"solution.txt", "u_t0.txt", "u_t0.5.txt", "u_t1.txt", "diagnostics.txt", "scattering.txt"})
        CHECK(fs::exists(dir / name));
}

TEST_CASE("numerical failures exit with status 2") {
    auto dir = scratch("fail");
    auto r = invoke({"solve", "--potential", "soliton", "--theta-count", "500", "--times", "0,400", "--window", "-1,1",
                     "--out", dir.string()});
    CHECK(r.status == 2);
    CHECK(r.err.find("t = 400") != std::string::npos);
}
