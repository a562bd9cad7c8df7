#include "pticgof/montecarlo.hpp"

#include "pticgof/error.hpp"
#include "pticgof/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace pticgof {

namespace {

void check_design(const CensoringScheme& scheme, std::int64_t n, std::int64_t replications) {
    if (n < 1) throw Error(ErrorCode::InvalidN, "n must be at least 1, got " + std::to_string(n));
    if (replications < 1) {
        throw Error(ErrorCode::InvalidArgument, "replications must be at least 1");
    }
    if (!(scheme.times().back() < 1.0)) {
        throw Error(ErrorCode::TimeOutsideUnitInterval, "uniformity test needs t_m < 1");
    }
}

unsigned resolve_threads(unsigned requested, std::int64_t work) {
    unsigned threads = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::int64_t>(threads, work));
}

/// Runs body(r) for r in [0, count) on `threads` workers, each owning one
/// contiguous block of indices.
template <class Body>
void parallel_for(std::int64_t count, unsigned threads, Body body) {
    if (threads <= 1) {
        for (std::int64_t r = 0; r < count; ++r) body(r);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    const std::int64_t block = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::int64_t begin = static_cast<std::int64_t>(w) * block;
        const std::int64_t end = std::min(count, begin + block);
        if (begin >= end) break;
        workers.emplace_back([&, begin, end] {
            try {
                for (std::int64_t r = begin; r < end; ++r) body(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    workers.clear();
    if (failure) std::rethrow_exception(failure);
}

double binomial_stderr(double frequency, std::int64_t replications) {
    return std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(replications));
}

} // namespace

std::vector<StatisticSet> simulate_statistics(const CensoringScheme& scheme, std::int64_t n,
                                              const LifetimeCdf& cdf, std::int64_t replications,
                                              std::uint64_t seed, StreamDomain domain,
                                              const McOptions& options) {
    check_design(scheme, n, replications);
    const auto probs = interval_probabilities(scheme, cdf);
    std::vector<StatisticSet> results(static_cast<std::size_t>(replications));
    parallel_for(replications, resolve_threads(options.threads, replications), [&](std::int64_t r) {
        Stream rng(seed, static_cast<std::uint64_t>(r), domain);
        const auto sample = simulate_sample(scheme, n, probs, rng);
        results[static_cast<std::size_t>(r)] = compute_statistics(uniform_deviations(sample));
    });
    return results;
}

std::size_t critical_rank(std::int64_t replications, double level) {
    // The slack absorbs representation error in 1 - level, e.g. 20000 * 0.95.
    const double target = static_cast<double>(replications) * (1.0 - level);
    auto rank = static_cast<std::int64_t>(std::ceil(target - 1e-9 * std::max(1.0, target)));
    rank = std::clamp<std::int64_t>(rank, 1, replications);
    return static_cast<std::size_t>(rank - 1);
}

CriticalValueTable critical_values(const CensoringScheme& scheme, std::int64_t n, double level,
                                   std::int64_t replications, std::uint64_t seed,
                                   const McOptions& options, std::string scheme_id) {
    if (!(level > 0.0 && level < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "level must lie in (0,1)");
    }
    const auto null_stats = simulate_statistics(scheme, n, [](double t) { return t; }, replications, seed,
                                                StreamDomain::NullCalibration, options);
    const std::size_t rank = critical_rank(replications, level);
    CriticalValueTable table{scheme, std::move(scheme_id), n, level, replications, seed, {}};
    std::vector<double> column(null_stats.size());
    for (Statistic s : kAllStatistics) {
        std::transform(null_stats.begin(), null_stats.end(), column.begin(),
                       [s](const StatisticSet& set) { return set[s]; });
        std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(rank), column.end());
        table.critical[s] = column[rank];
    }
    return table;
}

PerStatistic<double> p_value(const StatisticSet& observed, const CensoringScheme& scheme, std::int64_t n,
                             std::int64_t replications, std::uint64_t seed, const McOptions& options) {
    const auto null_stats = simulate_statistics(scheme, n, [](double t) { return t; }, replications, seed,
                                                StreamDomain::PValue, options);
    PerStatistic<std::int64_t> at_least{};
    for (const auto& set : null_stats) {
        for (Statistic s : kAllStatistics) {
            if (!exceeds(observed[s], set[s])) ++at_least[static_cast<std::size_t>(s)];
        }
    }
    PerStatistic<double> p{};
    for (std::size_t i = 0; i < kStatisticCount; ++i) {
        p[i] = static_cast<double>(1 + at_least[i]) / static_cast<double>(replications + 1);
    }
    return p;
}

PerStatistic<bool> reject(const StatisticSet& observed, const CriticalValueTable& table,
                          const CensoringScheme& scheme, std::int64_t n) {
    if (!(table.scheme == scheme) || table.n != n) {
        throw Error(ErrorCode::SchemeMismatch, "critical values were computed for a different scheme or n");
    }
    return reject(observed, table.critical);
}

PowerEstimate power(const CensoringScheme& scheme, std::int64_t n, const CriticalValueTable& table,
                    const AlternativeFamily& family, std::int64_t replications, std::uint64_t seed,
                    const McOptions& options) {
    if (!(table.scheme == scheme) || table.n != n) {
        throw Error(ErrorCode::SchemeMismatch, "critical values were computed for a different scheme or n");
    }
    const auto stats = simulate_statistics(scheme, n, family.as_cdf(), replications, seed,
                                           StreamDomain::Power, options);
    PerStatistic<std::int64_t> rejections{};
    for (const auto& set : stats) {
        const auto decision = reject(set, table.critical);
        for (std::size_t i = 0; i < kStatisticCount; ++i) rejections[i] += decision[i] ? 1 : 0;
    }
    PowerEstimate estimate{family, replications, {}, {}};
    for (std::size_t i = 0; i < kStatisticCount; ++i) {
        estimate.power[i] = static_cast<double>(rejections[i]) / static_cast<double>(replications);
        estimate.standard_error[i] = binomial_stderr(estimate.power[i], replications);
    }
    return estimate;
}

std::vector<PowerEstimate> power_curve(const CensoringScheme& scheme, std::int64_t n,
                                       const CriticalValueTable& table, FamilyTag tag,
                                       std::span<const double> grid, std::int64_t replications,
                                       std::uint64_t seed, const McOptions& options) {
    if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "parameter grid is empty");
    std::vector<AlternativeFamily> families;
    families.reserve(grid.size());
    for (double parameter : grid) families.push_back(AlternativeFamily::make(tag, parameter));
    std::vector<PowerEstimate> curve;
    curve.reserve(grid.size());
    for (const auto& family : families) {
        curve.push_back(power(scheme, n, table, family, replications, seed, options));
    }
    return curve;
}

} // namespace pticgof
