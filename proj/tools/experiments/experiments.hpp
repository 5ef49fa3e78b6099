#pragma once

#include <random>
#include <string>
#include <vector>

#include "experiments/config.hpp"
#include "experiments/report.hpp"
#include "localize/geometry.hpp"

namespace localize::tools {

// Runs one experiment and returns its finalized report. Throws localize::Error.
Json run_experiment(const ExperimentConfig& config);

// 0 when every asserted verdict passes, 1 otherwise. Verdicts only gate the exit code
// under --assert-tol, except for full-suite and list, which always assert.
int exit_code_for(const ExperimentConfig& config, const Json& report);

// Spec operations reached by each experiment; used by `list` to enforce coverage.
struct OperationCoverage {
    std::string experiment;
    std::vector<std::string> operations;
};
const std::vector<OperationCoverage>& operation_coverage();
const std::vector<std::string>& library_operations();

// Quadrature and Morse settings after the dimension-dependent defaults.
QuadratureSpec effective_quadrature(const ExperimentConfig& config, const ManifoldModel& model);
MorseOptions effective_morse(const ExperimentConfig& config, const ManifoldModel& model);

// Uniform points in the chart box, 5% away from every non-periodic edge and off the excised sets.
std::vector<Point> sample_chart_points(const ManifoldModel& model, std::size_t chart, int count,
                                       std::mt19937_64& rng);

struct CurvatureSample {
    double christoffel_diff = 0.0;   // max |analytic - FD| / max(1, max |analytic|)
    double riemann_diff = 0.0;
    double bianchi = 0.0;
    double pair_symmetry = 0.0;      // max |R_abcd - R_cdab|
    double scalar_curvature = 0.0;
    double euler_density = 0.0;
    double metric_min_eigenvalue = 0.0;
};
CurvatureSample curvature_sample(const ManifoldModel& model, std::size_t chart, const Point& x);

}  // namespace localize::tools
