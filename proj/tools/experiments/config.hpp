#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "localize/integrate.hpp"
#include "localize/morse.hpp"
#include "localize/tensor.hpp"

namespace localize::tools {

enum class ReportFormat { Json, Csv, Dat };

struct ExperimentConfig {
    std::string experiment;
    std::string model;      // empty: experiment default
    std::string function;   // empty: model default
    std::string group;      // empty: experiment default
    std::vector<double> theta;
    std::vector<double> beta;
    std::vector<double> calibration_beta;
    std::vector<double> s;
    std::vector<Complex> t;
    std::optional<double> shift;
    bool wrong_lengths = false;
    int points = 100;
    unsigned long long seed = 20240601ULL;
    QuadratureSpec quadrature;
    bool quadrature_overridden = false;  // false: 4-dimensional models get a lighter default rule
    MorseOptions morse;
    bool morse_overridden = false;
    std::optional<double> assert_tol;
    std::string output;
    ReportFormat format = ReportFormat::Json;
};

// "a:b:n" (n evenly spaced values, endpoints included), "x,y,z", or a single value.
std::vector<double> parse_grid(std::string_view text);
// "re,im" or "re"; several values separated by ';'.
std::vector<Complex> parse_complex_list(std::string_view text);
ReportFormat parse_format(std::string_view text);
std::string to_string(ReportFormat format);

const std::vector<std::string>& experiment_names();

// Fills experiment-specific defaults and checks the registry references. ConfigError on failure.
void resolve_defaults(ExperimentConfig& config);

}  // namespace localize::tools
