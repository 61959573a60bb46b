#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nileta {

enum class ErrorCode {
    NotSymmetric,
    NotEvenDiagonal,
    NotPositiveDefinite,
    NotSquare,
    Singular,
    OrderOverflow,
    NotInDual,
    RankMismatch,
    CertificationFailure,
    FitFailure,
    DomainError,
    ConvergenceFailure,
    InternalMismatch,
    InconsistentLevels,
    InconsistentOrders,
    MissingSum,
    IoError,
    ParseError,
    ArithmeticOverflow,
};

std::string_view error_name(ErrorCode code);

// Certification failures and internal mismatches signal bugs, not bad input.
bool is_internal(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace nileta
