#pragma once

#include <string>

#include "experiments/config.hpp"
#include "json.hpp"

namespace localize::tools {

using Json = nlohmann::ordered_json;

// Skeleton report: experiment, library version, config echo, empty records and verdicts.
Json new_report(const ExperimentConfig& config);

// Adds a verdict "value <= tolerance".
bool add_check(Json& report, const std::string& name, double value, double tolerance);
// Adds a boolean verdict with a free-form detail string.
bool add_verdict(Json& report, const std::string& name, bool pass, const std::string& detail);

// Sets "pass" from the verdicts and appends the summation fingerprint.
void finalize_report(Json& report);

// FNV-1a over the serialized records; any change in summation order shows up in the low bits.
std::string fingerprint(const Json& records);

std::string render(const Json& report, ReportFormat format);

Json complex_json(Complex z);

}  // namespace localize::tools
