#include "pticgof/error.hpp"

namespace pticgof {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonIncreasingTimes: return "NonIncreasingTimes";
    case ErrorCode::FirstTimeNotZero: return "FirstTimeNotZero";
    case ErrorCode::PercentageOutOfRange: return "PercentageOutOfRange";
    case ErrorCode::LastPercentageNotOne: return "LastPercentageNotOne";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidSample: return "InvalidSample";
    case ErrorCode::NonMonotoneCdf: return "NonMonotoneCdf";
    case ErrorCode::InvalidN: return "InvalidN";
    case ErrorCode::DegenerateRiskSet: return "DegenerateRiskSet";
    case ErrorCode::EmptyDeviationVector: return "EmptyDeviationVector";
    case ErrorCode::TimeOutsideUnitInterval: return "TimeOutsideUnitInterval";
    case ErrorCode::SchemeMismatch: return "SchemeMismatch";
    case ErrorCode::ParameterOutOfDomain: return "ParameterOutOfDomain";
    case ErrorCode::FlatCdfAcrossInspections: return "FlatCdfAcrossInspections";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace pticgof
