#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pticgof {

/// Inspection schedule and withdrawal plan of a progressive Type-I interval
/// censored life test.
///
/// times() holds t_0 = 0 < t_1 < ... < t_m, percentages() holds p_1..p_m with
/// p_m = 1. Instances only come out of validate_scheme(), so every live
/// CensoringScheme satisfies those constraints. Whether t_m < 1 is checked by
/// the uniformity test, not here, because schemes in the original time scale
/// of a general null may extend past 1.
class CensoringScheme {
public:
    std::span<const double> times() const noexcept { return times_; }
    std::span<const double> percentages() const noexcept { return percentages_; }

    /// Number of inspections m.
    std::size_t inspections() const noexcept { return percentages_.size(); }

    /// t_i for i in [0, m].
    double time(std::size_t i) const { return times_.at(i); }
    /// p_i for i in [1, m].
    double percentage(std::size_t i) const { return percentages_.at(i - 1); }

    friend bool operator==(const CensoringScheme&, const CensoringScheme&) = default;

private:
    friend CensoringScheme validate_scheme(std::vector<double>, std::vector<double>);
    CensoringScheme(std::vector<double> times, std::vector<double> percentages)
        : times_(std::move(times)), percentages_(std::move(percentages)) {}

    std::vector<double> times_;
    std::vector<double> percentages_;
};

/// Checks the scheme constraints and returns the scheme. Never repairs input;
/// throws Error with NonIncreasingTimes, FirstTimeNotZero,
/// PercentageOutOfRange, LastPercentageNotOne or LengthMismatch.
CensoringScheme validate_scheme(std::vector<double> times, std::vector<double> percentages);

/// Observed counts (X_i, R_i), i = 1..m, under a scheme.
class CensoredSample {
public:
    const CensoringScheme& scheme() const noexcept { return scheme_; }
    std::int64_t n() const noexcept { return n_; }
    std::span<const std::int64_t> failures() const noexcept { return failures_; }
    std::span<const std::int64_t> removals() const noexcept { return removals_; }
    std::size_t inspections() const noexcept { return failures_.size(); }

    friend bool operator==(const CensoredSample&, const CensoredSample&) = default;

private:
    friend CensoredSample make_sample(CensoringScheme, std::vector<std::int64_t>,
                                      std::vector<std::int64_t>);
    CensoredSample(CensoringScheme scheme, std::int64_t n, std::vector<std::int64_t> failures,
                   std::vector<std::int64_t> removals)
        : scheme_(std::move(scheme)), n_(n), failures_(std::move(failures)),
          removals_(std::move(removals)) {}

    CensoringScheme scheme_;
    std::int64_t n_;
    std::vector<std::int64_t> failures_;
    std::vector<std::int64_t> removals_;
};

/// Builds a sample with n = sum(X_i + R_i). Throws InvalidSample when a count is
/// negative, when R_i exceeds the survivors y_i at t_i, or when R_m != y_m;
/// LengthMismatch when the count vectors do not have m entries; InvalidN when
/// n would be 0.
CensoredSample make_sample(CensoringScheme scheme, std::vector<std::int64_t> failures,
                           std::vector<std::int64_t> removals);

/// Cumulative bookkeeping of a sample. All vectors have m + 1 entries and are
/// indexed by inspection j = 0..m; entry 0 is the state before the first
/// inspection (cumulative counts 0, alpha_plus[0] = n).
struct RiskSetTrace {
    std::vector<std::int64_t> alpha_plus;
    std::vector<std::int64_t> cum_failures;
    std::vector<std::int64_t> cum_removals;
};

RiskSetTrace risk_trace(const CensoredSample& sample);

/// The four inspection/withdrawal designs used in the reference simulation study:
/// "t1p1", "t1p2", "t2p1", "t2p2".
std::optional<CensoringScheme> builtin_scheme(std::string_view name);
std::vector<std::string> builtin_scheme_names();

} // namespace pticgof
