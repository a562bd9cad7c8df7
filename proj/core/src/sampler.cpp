#include "pticgof/sampler.hpp"

#include "pticgof/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pticgof {

namespace {

constexpr double kInversionMeanLimit = 30.0;

std::int64_t binomial_by_inversion(std::int64_t trials, double p, Stream& rng) {
    // p <= 0.5 here, so q^trials stays far from underflow for the means allowed.
    const double q = 1.0 - p;
    const double ratio = p / q;
    double mass = std::pow(q, static_cast<double>(trials));
    double u = rng.uniform01();
    std::int64_t x = 0;
    while (u >= mass && x < trials) {
        u -= mass;
        mass *= ratio * static_cast<double>(trials - x) / static_cast<double>(x + 1);
        ++x;
    }
    return x;
}

} // namespace

std::int64_t draw_binomial(std::int64_t trials, double p, Stream& rng) {
    if (trials <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    if (p > 0.5) return trials - draw_binomial(trials, 1.0 - p, rng);
    if (static_cast<double>(trials) * p < kInversionMeanLimit) {
        return binomial_by_inversion(trials, p, rng);
    }
    std::binomial_distribution<std::int64_t> dist(trials, p);
    return dist(rng);
}

std::vector<double> interval_probabilities(const CensoringScheme& scheme, const LifetimeCdf& cdf) {
    const auto times = scheme.times();
    std::vector<double> values(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        values[i] = cdf(times[i]);
        if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "cdf value outside [0,1] at t_" + std::to_string(i));
        }
        if (i > 0 && values[i] < values[i - 1]) {
            throw Error(ErrorCode::NonMonotoneCdf, "F(t_" + std::to_string(i) + ") < F(t_" +
                                                       std::to_string(i - 1) + ")");
        }
    }
    std::vector<double> probs(scheme.inspections());
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double before = values[i - 1];
        probs[i - 1] = before < 1.0 ? std::clamp((values[i] - before) / (1.0 - before), 0.0, 1.0) : 0.0;
    }
    return probs;
}

CensoredSample simulate_sample(const CensoringScheme& scheme, std::int64_t n,
                               std::span<const double> interval_probs, Stream& rng) {
    if (n < 1) throw Error(ErrorCode::InvalidN, "n must be at least 1, got " + std::to_string(n));
    const std::size_t m = scheme.inspections();
    if (interval_probs.size() != m) {
        throw Error(ErrorCode::LengthMismatch, "need one interval probability per inspection");
    }
    std::vector<std::int64_t> failures(m);
    std::vector<std::int64_t> removals(m);
    std::int64_t at_risk = n;
    for (std::size_t i = 0; i < m; ++i) {
        failures[i] = draw_binomial(at_risk, interval_probs[i], rng);
        const std::int64_t survivors = at_risk - failures[i];
        removals[i] = i + 1 == m
                          ? survivors
                          : static_cast<std::int64_t>(
                                std::floor(scheme.percentage(i + 1) * static_cast<double>(survivors)));
        at_risk = survivors - removals[i];
    }
    return make_sample(scheme, std::move(failures), std::move(removals));
}

CensoredSample simulate_sample(const CensoringScheme& scheme, std::int64_t n, const LifetimeCdf& cdf,
                               Stream& rng) {
    if (n < 1) throw Error(ErrorCode::InvalidN, "n must be at least 1, got " + std::to_string(n));
    const auto probs = interval_probabilities(scheme, cdf);
    return simulate_sample(scheme, n, probs, rng);
}

} // namespace pticgof
