#include "localize/error.hpp"

namespace localize {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::PointOutsideChart: return "PointOutsideChart";
        case ErrorCode::MetricSingular: return "MetricSingular";
        case ErrorCode::OddDimension: return "OddDimension";
        case ErrorCode::NoSymplecticForm: return "NoSymplecticForm";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::DegenerateCriticalPoint: return "DegenerateCriticalPoint";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
        case ErrorCode::NonNilpotent: return "NonNilpotent";
        case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
        case ErrorCode::DegenerateSymplecticForm: return "DegenerateSymplecticForm";
        case ErrorCode::BetaNonpositive: return "BetaNonpositive";
        case ErrorCode::ConjugacyClassSingular: return "ConjugacyClassSingular";
        case ErrorCode::SingularFit: return "SingularFit";
        case ErrorCode::UnknownModel: return "UnknownModel";
        case ErrorCode::UnknownFunction: return "UnknownFunction";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace localize
