#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace localize {

enum class ErrorCode {
    PointOutsideChart,
    MetricSingular,
    OddDimension,
    NoSymplecticForm,
    NotConverged,
    DegenerateCriticalPoint,
    DegenerateInput,
    AlgebraMismatch,
    NonNilpotent,
    NotAntisymmetric,
    DegenerateSymplecticForm,
    BetaNonpositive,
    ConjugacyClassSingular,
    SingularFit,
    UnknownModel,
    UnknownFunction,
    InvalidArgument,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code carries the failure kind.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace localize
