#pragma once

#include "pticgof/rng.hpp"
#include "pticgof/scheme.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace pticgof {

/// Lifetime distribution function x -> F(x). Must be nondecreasing with values
/// in [0, 1]; only monotonicity at the scheme times is checked.
using LifetimeCdf = std::function<double(double)>;

/// Conditional failure probabilities q_1..q_m of a unit entering interval
/// (t_{i-1}, t_i]: q_i = (F(t_i) - F(t_{i-1})) / (1 - F(t_{i-1})), and 0 once
/// F(t_{i-1}) reaches 1.
std::vector<double> interval_probabilities(const CensoringScheme& scheme, const LifetimeCdf& cdf);

/// One draw from Binomial(trials, p). Inversion when the smaller tail mean is
/// below 30, the standard library's rejection sampler otherwise.
std::int64_t draw_binomial(std::int64_t trials, double p, Stream& rng);

/// Generates a progressively Type-I interval censored sample: X_i ~
/// Binomial(Y_{i-1}, q_i), y_i = Y_{i-1} - X_i, R_i = floor(p_i y_i) (R_m = y_m)
/// and Y_i = y_i - R_i, starting from Y_0 = n.
CensoredSample simulate_sample(const CensoringScheme& scheme, std::int64_t n, const LifetimeCdf& cdf,
                               Stream& rng);

/// Same as above with the conditional probabilities already evaluated; this is
/// the Monte Carlo hot path.
CensoredSample simulate_sample(const CensoringScheme& scheme, std::int64_t n,
                               std::span<const double> interval_probs, Stream& rng);

} // namespace pticgof
