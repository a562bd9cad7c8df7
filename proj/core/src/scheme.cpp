#include "pticgof/scheme.hpp"

#include "pticgof/error.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace pticgof {

namespace {

std::string describe(std::string_view what, std::size_t index, double value) {
    std::ostringstream os;
    os << what << " at index " << index << " (value " << value << ")";
    return os.str();
}

} // namespace

CensoringScheme validate_scheme(std::vector<double> times, std::vector<double> percentages) {
    if (times.size() < 2) {
        throw Error(ErrorCode::LengthMismatch, "need t_0 and at least one inspection time");
    }
    if (percentages.size() != times.size() - 1) {
        throw Error(ErrorCode::LengthMismatch,
                    "expected " + std::to_string(times.size() - 1) + " percentages, got " +
                        std::to_string(percentages.size()));
    }
    if (times.front() != 0.0) {
        throw Error(ErrorCode::FirstTimeNotZero, describe("t_0 must be 0", 0, times.front()));
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !(times[i] > times[i - 1])) {
            throw Error(ErrorCode::NonIncreasingTimes, describe("time not increasing", i, times[i]));
        }
    }
    for (std::size_t i = 0; i < percentages.size(); ++i) {
        const double p = percentages[i];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(ErrorCode::PercentageOutOfRange, describe("percentage outside [0,1]", i + 1, p));
        }
    }
    if (percentages.back() != 1.0) {
        throw Error(ErrorCode::LastPercentageNotOne,
                    describe("last percentage must be 1", percentages.size(), percentages.back()));
    }
    return CensoringScheme(std::move(times), std::move(percentages));
}

CensoredSample make_sample(CensoringScheme scheme, std::vector<std::int64_t> failures,
                           std::vector<std::int64_t> removals) {
    const std::size_t m = scheme.inspections();
    if (failures.size() != m || removals.size() != m) {
        throw Error(ErrorCode::LengthMismatch, "scheme has " + std::to_string(m) +
                                                   " inspections; got " + std::to_string(failures.size()) +
                                                   " failure and " + std::to_string(removals.size()) +
                                                   " removal counts");
    }
    std::int64_t n = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (failures[i] < 0 || removals[i] < 0) {
            throw Error(ErrorCode::InvalidSample, "negative count at inspection " + std::to_string(i + 1));
        }
        n += failures[i] + removals[i];
    }
    if (n <= 0) {
        throw Error(ErrorCode::InvalidN, "sample size must be positive");
    }
    // y_i = survivors at t_i before withdrawal
    std::int64_t at_risk = n;
    for (std::size_t i = 0; i < m; ++i) {
        const std::int64_t survivors = at_risk - failures[i];
        if (survivors < 0 || removals[i] > survivors) {
            throw Error(ErrorCode::InvalidSample,
                        "removals exceed survivors at inspection " + std::to_string(i + 1));
        }
        at_risk = survivors - removals[i];
    }
    if (at_risk != 0) {
        // Unreachable given n = sum(X + R); kept so the R_m = y_m invariant is explicit.
        throw Error(ErrorCode::InvalidSample, "last inspection must withdraw every survivor");
    }
    return CensoredSample(std::move(scheme), n, std::move(failures), std::move(removals));
}

RiskSetTrace risk_trace(const CensoredSample& sample) {
    const std::size_t m = sample.inspections();
    RiskSetTrace trace;
    trace.alpha_plus.resize(m + 1);
    trace.cum_failures.resize(m + 1);
    trace.cum_removals.resize(m + 1);
    trace.alpha_plus[0] = sample.n();
    for (std::size_t j = 1; j <= m; ++j) {
        trace.cum_failures[j] = trace.cum_failures[j - 1] + sample.failures()[j - 1];
        trace.cum_removals[j] = trace.cum_removals[j - 1] + sample.removals()[j - 1];
        trace.alpha_plus[j] = sample.n() - trace.cum_failures[j] - trace.cum_removals[j];
    }
    return trace;
}

std::optional<CensoringScheme> builtin_scheme(std::string_view name) {
    static const std::vector<double> t1{0, 0.1, 0.2, 0.3, 0.4, 0.5};
    static const std::vector<double> t2{0, 0.05, 0.1, 0.2, 0.45, 0.5};
    static const std::vector<double> p1{0.25, 0.25, 0.5, 0.5, 1};
    static const std::vector<double> p2{0.5, 0.5, 0.25, 0.25, 1};
    if (name == "t1p1") return validate_scheme(t1, p1);
    if (name == "t1p2") return validate_scheme(t1, p2);
    if (name == "t2p1") return validate_scheme(t2, p1);
    if (name == "t2p2") return validate_scheme(t2, p2);
    return std::nullopt;
}

std::vector<std::string> builtin_scheme_names() { return {"t1p1", "t1p2", "t2p1", "t2p2"}; }

} // namespace pticgof
