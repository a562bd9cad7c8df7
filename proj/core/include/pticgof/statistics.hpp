#pragma once

#include "pticgof/estimator.hpp"
#include "pticgof/scheme.hpp"

#include <array>
#include <cstddef>
#include <string_view>

namespace pticgof {

enum class Statistic : std::size_t { CPlus = 0, CMinus, C, K, T1, T2 };

inline constexpr std::size_t kStatisticCount = 6;
inline constexpr std::array<Statistic, kStatisticCount> kAllStatistics{
    Statistic::CPlus, Statistic::CMinus, Statistic::C, Statistic::K, Statistic::T1, Statistic::T2};

/// Serialization key: c_plus, c_minus, c, k, t1, t2.
std::string_view statistic_name(Statistic s) noexcept;

template <class T>
using PerStatistic = std::array<T, kStatisticCount>;

/// C+ = max D_i, C- = max(-D_i), C = max(C+, C-), K = C+ + C-,
/// T1 = mean D_i^2, T2 = mean |D_i|.
/// C+ and C- are signed, so K can be smaller than C.
struct StatisticSet {
    double c_plus = 0.0;
    double c_minus = 0.0;
    double c = 0.0;
    double k = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;

    double operator[](Statistic s) const noexcept;
    double& operator[](Statistic s) noexcept;

    friend bool operator==(const StatisticSet&, const StatisticSet&) = default;
};

/// Throws EmptyDeviationVector for m = 0.
StatisticSet compute_statistics(const DeviationVector& deviations);

/// Statistics of the uniformity test on `sample`. Requires t_m < 1
/// (TimeOutsideUnitInterval otherwise).
StatisticSet test_uniformity(const CensoredSample& sample);

/// Values closer than this are the same atom of a statistic's law. One atom
/// can be reached through different rounding paths (e.g. 0.215625 computed
/// from two different count vectors), so exact comparison would split ties.
inline constexpr double kTieTolerance = 1e-12;

/// True when `a` exceeds `b` by more than kTieTolerance.
inline bool exceeds(double a, double b) noexcept { return a > b + kTieTolerance; }

/// decision[s] = observed[s] > critical[s]; a tie does not reject.
PerStatistic<bool> reject(const StatisticSet& observed, const StatisticSet& critical) noexcept;

} // namespace pticgof
