#pragma once

#include "pticgof/sampler.hpp"
#include "pticgof/scheme.hpp"

#include <vector>

namespace pticgof {

/// Product-limit reliability estimates at t_1..t_m:
///   R(t_i) = prod_{j<=i} (1 - X_j / alpha^+_{j-1}).
/// A factor whose risk set alpha^+_{j-1} is empty is taken as 1, so the
/// estimate stays flat once every unit has left the test.
struct ReliabilityEstimate {
    std::vector<double> values;
};

/// D_i = estimated reliability - theoretical reliability, i = 1..m.
struct DeviationVector {
    std::vector<double> d;
};

/// Throws DegenerateRiskSet when X_j > 0 with an empty risk set, which only
/// hand-entered counts can produce.
ReliabilityEstimate reliability_estimates(const CensoredSample& sample);

/// Deviations against 1 - null_cdf(t_i).
DeviationVector deviations(const CensoredSample& sample, const LifetimeCdf& null_cdf);

/// Deviations against the uniform null, 1 - t_i.
DeviationVector uniform_deviations(const CensoredSample& sample);

} // namespace pticgof
