#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "experiments/cli.hpp"
#include "experiments/config.hpp"
#include "experiments/experiments.hpp"
#include "experiments/report.hpp"
#include "fixtures.hpp"

using namespace localize;
using namespace localize::tools;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("localize_cli_test_" + name);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("grid parsing") {
    CHECK(parse_grid("0:1:5") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(parse_grid("0.5,1,2") == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(parse_grid("3") == std::vector<double>{3.0});
    for (const char* bad : {"", "a", "0:1", "0:1:0", "1,,2", "0:1:x"})
        CHECK(fixture::error_code_of([&] { parse_grid(bad); }) == ErrorCode::ConfigError);
}

TEST_CASE("complex list and format parsing") {
    CHECK(parse_complex_list("1,0;0,5") == std::vector<Complex>{Complex(1, 0), Complex(0, 5)});
    CHECK(parse_complex_list("2") == std::vector<Complex>{Complex(2, 0)});
    CHECK(fixture::error_code_of([] { parse_complex_list("1,2,3"); }) == ErrorCode::ConfigError);
    CHECK(parse_format("csv") == ReportFormat::Csv);
    CHECK(to_string(parse_format("dat")) == "dat");
    CHECK(fixture::error_code_of([] { parse_format("xml"); }) == ErrorCode::ConfigError);
}

TEST_CASE("default resolution") {
    ExperimentConfig c;
    c.experiment = "dh";
    resolve_defaults(c);
    CHECK(c.model == "s2");
    CHECK(c.function == "height");
    CHECK(c.t.size() == 2);

    ExperimentConfig bad;
    bad.experiment = "nonsense";
    CHECK(fixture::error_code_of([&] { resolve_defaults(bad); }) == ErrorCode::ConfigError);
    bad.experiment = "heat";
    bad.beta = {1.0, -1.0};
    CHECK(fixture::error_code_of([&] { resolve_defaults(bad); }) != static_cast<ErrorCode>(-1));
    ExperimentConfig unknown;
    unknown.experiment = "curvature";
    unknown.model = "klein";
    CHECK(fixture::error_code_of([&] { resolve_defaults(unknown); }) != static_cast<ErrorCode>(-1));
}

TEST_CASE("exit codes") {
    CHECK(run({"gauss-bonnet", "--model", "s2", "--assert-tol", "1e-6"}).code == 0);
    CHECK(run({"dh", "--model", "s2", "--hamiltonian", "height", "--t", "0,5", "--assert-tol", "1e-8"}).code == 0);
    CHECK(run({"dh", "--model", "s2", "--hamiltonian", "tilted", "--t", "0,1", "--assert-tol", "1e-8"}).code == 1);
    CHECK(run({"dh", "--model", "s2", "--hamiltonian", "tilted", "--t", "0,1"}).code == 0);
    CHECK(run({"heat", "--group", "su2", "--beta-grid", "bad"}).code == 2);
    CHECK(run({"curvature", "--model", "klein"}).code == 2);
    CHECK(run({"dh", "--model", "s2", "--hamiltonian", "nope"}).code == 2);
    CHECK(run({"no-such-experiment"}).code == 2);
    CHECK(run({"curvature", "--no-such-flag"}).code == 2);
    CHECK(run({}).code == 2);
    const Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("--assert-tol") != std::string::npos);
    CHECK(run({"--version"}).code == 0);
}

TEST_CASE("report rendering") {
    const Run json = run({"gauss-bonnet", "--model", "t2"});
    REQUIRE(json.code == 0);
    const Json parsed = Json::parse(json.out);
    CHECK(parsed.contains("records"));
    CHECK(parsed.contains("verdicts"));
    CHECK(parsed.contains("fingerprint"));

    const Run csv = run({"gauss-bonnet", "--model", "t2", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find(',') != std::string::npos);
    CHECK(csv.out.find('{') == std::string::npos);

    const Run dat = run({"gauss-bonnet", "--model", "t2", "--format", "dat"});
    CHECK(dat.code == 0);
    CHECK(dat.out.rfind("#", 0) == 0);
}

TEST_CASE("output file gets the report and stdout the summary") {
    const auto path = temp_path("report.json");
    std::filesystem::remove(path);
    const Run r = run({"gauss-bonnet", "--model", "s2", "-o", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS", 0) == 0);
    std::ifstream in(path);
    const Json parsed = Json::parse(in);
    CHECK(parsed["pass"].get<bool>());
    std::filesystem::remove(path);
}

TEST_CASE("config file with command-line override") {
    const auto path = temp_path("config.ini");
    {
        std::ofstream f(path);
        f << "model = \"t2\"\nformat = \"csv\"\n";
    }
    const Run from_file = run({"gauss-bonnet", "--config", path.string()});
    CHECK(from_file.code == 0);
    CHECK(from_file.out.find("t2") != std::string::npos);
    const Run overridden = run({"gauss-bonnet", "--config", path.string(), "--model", "s2", "--format", "json"});
    CHECK(overridden.code == 0);
    CHECK(Json::parse(overridden.out)["config"]["model"] == "s2");
    std::filesystem::remove(path);
}

TEST_CASE("list covers every library operation") {
    const Run r = run({"list"});
    CHECK(r.code == 0);
    std::set<std::string> covered;
    for (const auto& c : operation_coverage()) covered.insert(c.operations.begin(), c.operations.end());
    for (const auto& op : library_operations()) CHECK_MESSAGE(covered.count(op) == 1, op);
    for (const auto& name : experiment_names()) CHECK(r.out.find(name) != std::string::npos);
}

}
