#include <catch_amalgamated.hpp>

#include "pticgof/alternatives.hpp"
#include "pticgof/error.hpp"
#include "pticgof/sampler.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <numeric>
#include <random>

using namespace pticgof;

namespace {

const LifetimeCdf kUniform = [](double x) { return x; };

std::vector<std::int64_t> to_vector(std::span<const std::int64_t> s) { return {s.begin(), s.end()}; }

/// Random valid scheme with m in [1, 8] and t_m < 1.
CensoringScheme random_scheme(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> m_dist(1, 8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int m = m_dist(gen);
    std::vector<double> cuts(static_cast<std::size_t>(m));
    for (auto& c : cuts) c = 0.02 + 0.95 * unit(gen);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> times{0.0};
    times.insert(times.end(), cuts.begin(), cuts.end());
    std::vector<double> percentages(cuts.size());
    for (auto& p : percentages) p = unit(gen) < 0.2 ? 0.0 : unit(gen);
    percentages.back() = 1.0;
    return validate_scheme(std::move(times), std::move(percentages));
}

AlternativeFamily random_family(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (std::uniform_int_distribution<int>(0, 3)(gen)) {
    case 0: return AlternativeFamily::lehmann(0.2 + 3.0 * unit(gen));
    case 1: return AlternativeFamily::centered(0.2 + 3.0 * unit(gen));
    case 2: return AlternativeFamily::compressed(0.45 * unit(gen));
    default: return AlternativeFamily::uniform();
    }
}

/// Pearson chi-square p-value of `counts` against Binomial(trials, p), pooling
/// cells with expected count below 5.
double binomial_gof_pvalue(const std::vector<std::int64_t>& counts, std::int64_t trials, double p) {
    const boost::math::binomial_distribution<double> law(static_cast<double>(trials), p);
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    std::vector<double> observed;
    std::vector<double> expected;
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    for (std::int64_t k = 0; k <= trials; ++k) {
        pooled_obs += static_cast<double>(counts[static_cast<std::size_t>(k)]);
        pooled_exp += total * boost::math::pdf(law, static_cast<double>(k));
        if (pooled_exp >= 5.0) {
            observed.push_back(pooled_obs);
            expected.push_back(pooled_exp);
            pooled_obs = pooled_exp = 0.0;
        }
    }
    // short upper tail joins the last cell
    observed.back() += pooled_obs;
    expected.back() += pooled_exp;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    }
    const boost::math::chi_squared_distribution<double> ref(static_cast<double>(observed.size() - 1));
    return boost::math::cdf(boost::math::complement(ref, chi2));
}

} // namespace

TEST_CASE("all mass below t_1 puts every unit into the first interval", "[sampler]") {
    const auto scheme = *builtin_scheme("t1p1");
    Stream rng(3);
    const auto sample = simulate_sample(scheme, 40, [](double t) { return t > 0.0 ? 1.0 : 0.0; }, rng);
    CHECK(to_vector(sample.failures()) == std::vector<std::int64_t>{40, 0, 0, 0, 0});
    CHECK(to_vector(sample.removals()) == std::vector<std::int64_t>{0, 0, 0, 0, 0});
}

TEST_CASE("no failures leaves only the floor-rule withdrawal cascade", "[sampler]") {
    // y1=40 R1=10, y2=30 R2=7, y3=23 R3=11, y4=12 R4=6, y5=6 R5=6
    const auto scheme = *builtin_scheme("t1p1");
    Stream rng(5);
    const auto sample = simulate_sample(scheme, 40, [](double) { return 0.0; }, rng);
    CHECK(to_vector(sample.failures()) == std::vector<std::int64_t>{0, 0, 0, 0, 0});
    CHECK(to_vector(sample.removals()) == std::vector<std::int64_t>{10, 7, 11, 6, 6});
}

TEST_CASE("mean first-interval failures under the uniform law", "[sampler][moments]") {
    const auto scheme = *builtin_scheme("t1p1");
    const auto probs = interval_probabilities(scheme, kUniform);
    constexpr int kDraws = 20000;
    double sum = 0.0;
    for (int r = 0; r < kDraws; ++r) {
        Stream rng(11, static_cast<std::uint64_t>(r));
        sum += static_cast<double>(simulate_sample(scheme, 40, probs, rng).failures()[0]);
    }
    const double mean = sum / kDraws;
    const double se = std::sqrt(40 * 0.1 * 0.9 / kDraws);
    CHECK(std::abs(mean - 4.0) < 3 * se);
}

TEST_CASE("interval probabilities are conditional on survival", "[sampler]") {
    const auto scheme = validate_scheme({0, .2, .6}, {.5, 1});
    const auto probs = interval_probabilities(scheme, kUniform);
    CHECK(probs[0] == Catch::Approx(0.2));
    CHECK(probs[1] == Catch::Approx(0.4 / 0.8));

    const auto saturated = interval_probabilities(scheme, [](double x) { return x < 0.1 ? 0.0 : 1.0; });
    CHECK(saturated[0] == 1.0);
    CHECK(saturated[1] == 0.0);
}

TEST_CASE("sampler errors", "[sampler][errors]") {
    const auto scheme = *builtin_scheme("t1p1");
    Stream rng(1);
    CHECK_THROWS_MATCHES(simulate_sample(scheme, 0, kUniform, rng), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::InvalidN; }));
    const LifetimeCdf decreasing = [](double x) { return 1.0 - x; };
    CHECK_THROWS_MATCHES(simulate_sample(scheme, 10, decreasing, rng), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == ErrorCode::NonMonotoneCdf; }));
}

TEST_CASE("generated samples satisfy the sample invariants", "[sampler][property]") {
    std::mt19937_64 gen(20240601);
    std::uniform_int_distribution<std::int64_t> n_dist(1, 200);
    for (int trial = 0; trial < 500; ++trial) {
        const auto scheme = random_scheme(gen);
        const auto family = random_family(gen);
        const std::int64_t n = n_dist(gen);
        Stream rng(77, static_cast<std::uint64_t>(trial));
        const auto sample = simulate_sample(scheme, n, family.as_cdf(), rng);

        std::int64_t total = 0;
        std::int64_t entering = n;  // Y_{i-1}
        const auto trace = risk_trace(sample);
        for (std::size_t i = 0; i < sample.inspections(); ++i) {
            const auto x = sample.failures()[i];
            const auto r = sample.removals()[i];
            total += x + r;
            const auto survivors = entering - x;  // y_i
            REQUIRE(survivors >= 0);
            const auto expected_r = i + 1 == sample.inspections()
                                        ? survivors
                                        : static_cast<std::int64_t>(std::floor(scheme.percentage(i + 1) *
                                                                               static_cast<double>(survivors)));
            REQUIRE(r == expected_r);
            REQUIRE(survivors - r <= entering);  // monotone risk set
            REQUIRE(trace.alpha_plus[i + 1] == survivors - r);
            entering = survivors - r;
        }
        REQUIRE(entering == 0);
        REQUIRE(total == n);
        REQUIRE(trace.alpha_plus.back() == 0);
    }
}

TEST_CASE("single-inspection counts follow Binomial(n, F(t_1))", "[sampler][distribution]") {
    struct Case {
        std::int64_t n;
        double t1;
    };
    // the last case has n*min(p,1-p) above the inversion cut-off
    const std::vector<Case> cases{{10, 0.3}, {40, 0.55}, {60, 0.45}, {400, 0.3}};
    for (const auto& c : cases) {
        const auto scheme = validate_scheme({0, c.t1}, {1});
        const auto probs = interval_probabilities(scheme, kUniform);
        std::vector<std::int64_t> counts(static_cast<std::size_t>(c.n + 1));
        for (int r = 0; r < 20000; ++r) {
            Stream rng(2024, static_cast<std::uint64_t>(r));
            ++counts[static_cast<std::size_t>(simulate_sample(scheme, c.n, probs, rng).failures()[0])];
        }
        INFO("n=" << c.n << " p=" << c.t1);
        CHECK(binomial_gof_pvalue(counts, c.n, c.t1) > 0.001);
    }
}

TEST_CASE("same seed and stream index reproduce the sample", "[sampler][determinism]") {
    const auto scheme = *builtin_scheme("t2p2");
    const auto cdf = AlternativeFamily::centered(0.6).as_cdf();
    Stream a(99, 17);
    Stream b(99, 17);
    Stream c(99, 18);
    const auto first = simulate_sample(scheme, 40, cdf, a);
    CHECK(first == simulate_sample(scheme, 40, cdf, b));
    bool differs = false;
    for (int k = 0; k < 20 && !differs; ++k) differs = !(simulate_sample(scheme, 40, cdf, c) == first);
    CHECK(differs);
}

TEST_CASE("binomial edge probabilities", "[sampler][binomial]") {
    Stream rng(1);
    CHECK(draw_binomial(25, 0.0, rng) == 0);
    CHECK(draw_binomial(25, 1.0, rng) == 25);
    CHECK(draw_binomial(0, 0.5, rng) == 0);
    for (int i = 0; i < 1000; ++i) {
        const auto x = draw_binomial(7, 0.999, rng);
        REQUIRE(x >= 0);
        REQUIRE(x <= 7);
    }
}
