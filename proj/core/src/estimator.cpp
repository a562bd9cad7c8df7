#include "pticgof/estimator.hpp"

#include "pticgof/error.hpp"

namespace pticgof {

ReliabilityEstimate reliability_estimates(const CensoredSample& sample) {
    const std::size_t m = sample.inspections();
    const auto failures = sample.failures();
    const auto removals = sample.removals();
    ReliabilityEstimate estimate;
    estimate.values.resize(m);
    std::int64_t at_risk = sample.n();  // alpha^+_{j-1}
    double product = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
        if (at_risk == 0) {
            if (failures[j] > 0) {
                throw Error(ErrorCode::DegenerateRiskSet,
                            "failures recorded at inspection " + std::to_string(j + 1) +
                                " with no unit at risk");
            }
        } else {
            product *= 1.0 - static_cast<double>(failures[j]) / static_cast<double>(at_risk);
        }
        estimate.values[j] = product;
        at_risk -= failures[j] + removals[j];
    }
    return estimate;
}

DeviationVector deviations(const CensoredSample& sample, const LifetimeCdf& null_cdf) {
    auto estimate = reliability_estimates(sample);
    const auto times = sample.scheme().times();
    DeviationVector out;
    out.d.resize(estimate.values.size());
    for (std::size_t i = 0; i < out.d.size(); ++i) {
        out.d[i] = estimate.values[i] - (1.0 - null_cdf(times[i + 1]));
    }
    return out;
}

DeviationVector uniform_deviations(const CensoredSample& sample) {
    return deviations(sample, [](double t) { return t; });
}

} // namespace pticgof
