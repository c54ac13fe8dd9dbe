#pragma once

#include <stdexcept>
#include <string>

namespace kdv2 {

/// Failure categories surfaced by the library. Tests and the CLI dispatch on
/// the code; the message carries context.
enum class ErrorCode {
    InverseOutOfBranch,
    MuBelowBranch,
    NotOnHyperplane,
    EmptyGrid,
    ExponentContract,
    DegenerateLeadingCoefficient,
    GridMismatch,
    GridTooCoarse,
    NegativeDomainInput,
    TraceNotVanishing,
    ForbiddenRegularity,
    MultiplierBoundViolated,
    SigmaTooSmall,
    SigmaOutOfRange,
    ZeroDenominator,
    NotZeroExtended,
    TruncationBudgetExceeded,
    TimeOutOfRange,
    SpectrumUnavailable,
    BetaOutOfRange,
    IncompatibleData,
    NoContraction,
    UnknownProfile,
    InvalidArgument,
};

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

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace kdv2
