#include "undulant/errors.hpp"

namespace undulant {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::PeriodicityMismatch: return "PeriodicityMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::LinearSolveDiverged: return "LinearSolveDiverged";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::WrapDetected: return "WrapDetected";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::TimeGridMismatch: return "TimeGridMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace undulant
