#include "pticgof/statistics.hpp"

#include "pticgof/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pticgof {

std::string_view statistic_name(Statistic s) noexcept {
    switch (s) {
    case Statistic::CPlus: return "c_plus";
    case Statistic::CMinus: return "c_minus";
    case Statistic::C: return "c";
    case Statistic::K: return "k";
    case Statistic::T1: return "t1";
    case Statistic::T2: return "t2";
    }
    return "?";
}

double StatisticSet::operator[](Statistic s) const noexcept {
    return const_cast<StatisticSet&>(*this)[s];
}

double& StatisticSet::operator[](Statistic s) noexcept {
    switch (s) {
    case Statistic::CPlus: return c_plus;
    case Statistic::CMinus: return c_minus;
    case Statistic::C: return c;
    case Statistic::K: return k;
    case Statistic::T1: return t1;
    case Statistic::T2: break;
    }
    return t2;
}

StatisticSet compute_statistics(const DeviationVector& deviations) {
    const auto& d = deviations.d;
    if (d.empty()) throw Error(ErrorCode::EmptyDeviationVector, "no inspection times");
    StatisticSet s;
    s.c_plus = -std::numeric_limits<double>::infinity();
    s.c_minus = -std::numeric_limits<double>::infinity();
    double squares = 0.0;
    double absolutes = 0.0;
    for (double value : d) {
        s.c_plus = std::max(s.c_plus, value);
        s.c_minus = std::max(s.c_minus, -value);
        squares += value * value;
        absolutes += std::abs(value);
    }
    const double m = static_cast<double>(d.size());
    s.c = std::max(s.c_plus, s.c_minus);
    s.k = s.c_plus + s.c_minus;
    s.t1 = squares / m;
    s.t2 = absolutes / m;
    return s;
}

StatisticSet test_uniformity(const CensoredSample& sample) {
    const auto times = sample.scheme().times();
    if (!(times.back() < 1.0)) {
        throw Error(ErrorCode::TimeOutsideUnitInterval,
                    "uniformity test needs t_m < 1, got " + std::to_string(times.back()));
    }
    return compute_statistics(uniform_deviations(sample));
}

PerStatistic<bool> reject(const StatisticSet& observed, const StatisticSet& critical) noexcept {
    PerStatistic<bool> decision{};
    for (Statistic s : kAllStatistics) {
        decision[static_cast<std::size_t>(s)] = exceeds(observed[s], critical[s]);
    }
    return decision;
}

} // namespace pticgof
