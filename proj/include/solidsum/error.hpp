#ifndef SOLIDSUM_ERROR_HPP
#define SOLIDSUM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace solidsum {

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    DimensionMismatch,
    DegenerateInput,
    BadIndex,
    NotPointed,
    DegenerateCone,
    UnsupportedDimension,
    BadEpsilon,
    ScheduleTooShort,
    QuadratureUnderResolved,
    PoleHit,
    ConvergenceDomain,
    NonConvergent,
    ImaginaryResidue,
    PoorFit,
    UnsupportedCombination,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace solidsum

#endif  // SOLIDSUM_ERROR_HPP
