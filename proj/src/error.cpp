#include "solidsum/error.hpp"

namespace solidsum {

const char* to_string(ErrorCode code)
{
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::NotPointed: return "NotPointed";
        case ErrorCode::DegenerateCone: return "DegenerateCone";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::BadEpsilon: return "BadEpsilon";
        case ErrorCode::ScheduleTooShort: return "ScheduleTooShort";
        case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
        case ErrorCode::PoleHit: return "PoleHit";
        case ErrorCode::ConvergenceDomain: return "ConvergenceDomain";
        case ErrorCode::NonConvergent: return "NonConvergent";
        case ErrorCode::ImaginaryResidue: return "ImaginaryResidue";
        case ErrorCode::PoorFit: return "PoorFit";
        case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

}  // namespace solidsum
