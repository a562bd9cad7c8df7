#pragma once

#include "pticgof/alternatives.hpp"
#include "pticgof/rng.hpp"
#include "pticgof/scheme.hpp"
#include "pticgof/statistics.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pticgof {

inline constexpr std::int64_t kDefaultReplications = 20000;
inline constexpr double kDefaultLevel = 0.05;
inline constexpr std::int64_t kDefaultSampleSize = 40;

struct McOptions {
    /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results
    /// never depend on this value.
    unsigned threads = 0;
};

/// Upper-tail critical values of the six statistics for one (scheme, n, level),
/// together with the Monte Carlo settings that produced them.
struct CriticalValueTable {
    CensoringScheme scheme;
    std::string scheme_id;
    std::int64_t n = 0;
    double level = kDefaultLevel;
    std::int64_t replications = 0;
    std::uint64_t seed = 0;
    StatisticSet critical;
};

/// Rejection frequencies of the six tests under one alternative.
struct PowerEstimate {
    AlternativeFamily family;
    std::int64_t replications = 0;
    PerStatistic<double> power{};
    /// sqrt(power (1 - power) / replications)
    PerStatistic<double> standard_error{};
};

/// Statistics of `replications` simulated samples drawn from `cdf`, evaluated
/// against the uniform null. Entry r comes from Stream(seed, r, domain).
std::vector<StatisticSet> simulate_statistics(const CensoringScheme& scheme, std::int64_t n,
                                              const LifetimeCdf& cdf, std::int64_t replications,
                                              std::uint64_t seed, StreamDomain domain,
                                              const McOptions& options = {});

/// Index (0-based, into the ascending sort) of the critical order statistic:
/// ceil(replications * (1 - level)) - 1.
std::size_t critical_rank(std::int64_t replications, double level);

/// Simulates the null (uniform) law once and takes, for each statistic, the
/// ceil(B (1 - level))-th smallest value.
CriticalValueTable critical_values(const CensoringScheme& scheme, std::int64_t n, double level,
                                   std::int64_t replications, std::uint64_t seed,
                                   const McOptions& options = {}, std::string scheme_id = {});

/// Add-one Monte Carlo p-values: (1 + #{simulated >= observed}) / (B + 1).
PerStatistic<double> p_value(const StatisticSet& observed, const CensoringScheme& scheme, std::int64_t n,
                             std::int64_t replications, std::uint64_t seed, const McOptions& options = {});

/// Decisions for a sample observed under (scheme, n). Throws SchemeMismatch
/// when the table was calibrated for a different design.
PerStatistic<bool> reject(const StatisticSet& observed, const CriticalValueTable& table,
                          const CensoringScheme& scheme, std::int64_t n);

PowerEstimate power(const CensoringScheme& scheme, std::int64_t n, const CriticalValueTable& table,
                    const AlternativeFamily& family, std::int64_t replications, std::uint64_t seed,
                    const McOptions& options = {});

/// One PowerEstimate per grid point, in grid order. Every point reuses `seed`.
std::vector<PowerEstimate> power_curve(const CensoringScheme& scheme, std::int64_t n,
                                       const CriticalValueTable& table, FamilyTag tag,
                                       std::span<const double> grid, std::int64_t replications,
                                       std::uint64_t seed, const McOptions& options = {});

} // namespace pticgof
