#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pticgof {

enum class ErrorCode {
    // scheme / sample construction
    NonIncreasingTimes,
    FirstTimeNotZero,
    PercentageOutOfRange,
    LastPercentageNotOne,
    LengthMismatch,
    InvalidSample,
    // sampling
    NonMonotoneCdf,
    InvalidN,
    // estimation / statistics
    DegenerateRiskSet,
    EmptyDeviationVector,
    TimeOutsideUnitInterval,
    SchemeMismatch,
    // alternatives
    ParameterOutOfDomain,
    FlatCdfAcrossInspections,
    // monte carlo / io
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// All library failures are reported by throwing this type. The code is stable
/// and meant for programmatic dispatch; what() carries a human-readable detail.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace pticgof
