#include "experiments/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "experiments/config.hpp"
#include "experiments/experiments.hpp"
#include "experiments/report.hpp"
#include "localize/error.hpp"
#include "localize/version.hpp"

namespace localize::tools {

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigError:
        case ErrorCode::UnknownModel:
        case ErrorCode::UnknownFunction:
        case ErrorCode::InvalidArgument:
        case ErrorCode::BetaNonpositive:
        case ErrorCode::ConjugacyClassSingular:
        case ErrorCode::PointOutsideChart:
        case ErrorCode::OddDimension:
        case ErrorCode::NoSymplecticForm:
        case ErrorCode::SingularFit:
            return true;
        default:
            return false;
    }
}

struct RawOptions {
    std::string experiment;
    std::string model, function, group;
    std::string theta, beta, calibration, s_grid, t;
    std::optional<double> shift;
    bool wrong_lengths = false;
    int points = 100;
    unsigned long long seed = 20240601ULL;
    std::optional<int> order, cells, max_refine, seeds;
    std::optional<double> tol, assert_tol;
    std::string output;
    std::string format = "json";
};

ExperimentConfig to_config(const RawOptions& raw) {
    ExperimentConfig c;
    c.experiment = raw.experiment;
    c.model = raw.model;
    c.function = raw.function;
    c.group = raw.group;
    if (!raw.theta.empty()) c.theta = parse_grid(raw.theta);
    if (!raw.beta.empty()) c.beta = parse_grid(raw.beta);
    if (!raw.calibration.empty()) c.calibration_beta = parse_grid(raw.calibration);
    if (!raw.s_grid.empty()) c.s = parse_grid(raw.s_grid);
    if (!raw.t.empty()) c.t = parse_complex_list(raw.t);
    c.shift = raw.shift;
    c.wrong_lengths = raw.wrong_lengths;
    c.points = raw.points;
    c.seed = raw.seed;
    if (raw.order) c.quadrature.order = *raw.order;
    if (raw.cells) c.quadrature.cells = *raw.cells;
    if (raw.max_refine) c.quadrature.max_refinements = *raw.max_refine;
    if (raw.tol) c.quadrature.target_rel_tol = *raw.tol;
    c.quadrature_overridden = raw.order || raw.cells || raw.max_refine || raw.tol;
    if (raw.seeds) c.morse.seeds_per_axis = *raw.seeds;
    c.morse_overridden = raw.seeds.has_value();
    c.assert_tol = raw.assert_tol;
    c.output = raw.output;
    c.format = parse_format(raw.format);
    resolve_defaults(c);
    return c;
}

std::string summary(const Json& report) {
    std::string text;
    for (const auto& v : report["verdicts"]) {
        text += (v["pass"].get<bool>() ? "PASS  " : "FAIL  ") + v["name"].get<std::string>() + "\n";
    }
    return text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical checks of localization identities", "localize"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "key=value file; command-line flags override it");
    RawOptions raw;
    app.add_option("experiment", raw.experiment, "Experiment to run (see `list`)")->required();
    app.add_option("--model", raw.model, "s2, s2:r=<r>, t2, s2xs2");
    app.add_option("--function,--hamiltonian", raw.function, "Registered scalar field of the model");
    app.add_option("--group", raw.group, "u1, su2, so3");
    app.add_option("--theta", raw.theta, "Class angles: a:b:n or comma list");
    app.add_option("--beta,--beta-grid", raw.beta, "Inverse temperatures: a:b:n or comma list");
    app.add_option("--calibration-grid", raw.calibration, "Betas used to calibrate (a, c)");
    app.add_option("--s-grid", raw.s_grid, "Deformation strengths: a:b:n or comma list");
    app.add_option("--t", raw.t, "Complex t as re,im; several separated by ';'");
    app.add_option("--shift", raw.shift, "Exponential shift for smalltime (default: calibrated)");
    app.add_flag("--wrong-lengths", raw.wrong_lengths, "Use the theta+2 pi n control family");
    app.add_option("--points", raw.points, "Random sample points per chart (curvature)");
    app.add_option("--seed", raw.seed, "Sampling seed");
    app.add_option("--order", raw.order, "Gauss-Legendre points per axis per cell");
    app.add_option("--cells", raw.cells, "Cells per axis at the first level");
    app.add_option("--tol", raw.tol, "Quadrature relative tolerance");
    app.add_option("--max-refine", raw.max_refine, "Maximum refinement levels");
    app.add_option("--seeds", raw.seeds, "Newton seeds per axis");
    app.add_option("--assert-tol", raw.assert_tol, "Assert verdicts at this tolerance (exit 1 on failure)");
    app.add_option("--output,-o", raw.output, "Report path (default: stdout)");
    app.add_option("--format", raw.format, "json, csv or dat");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitConfig;
    }

    ExperimentConfig config;
    try {
        config = to_config(raw);
    } catch (const Error& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    }

    Json report;
    try {
        report = run_experiment(config);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return is_input_error(e.code()) ? kExitConfig : kExitAssertion;
    }

    const std::string text = render(report, config.format);
    if (config.output.empty()) {
        out << text;
    } else {
        std::ofstream file(config.output, std::ios::binary);
        if (!file) {
            err << "cannot write " << config.output << "\n";
            return kExitConfig;
        }
        file << text;
        out << summary(report);
    }
    return exit_code_for(config, report);
}

}  // namespace localize::tools
