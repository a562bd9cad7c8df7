#include <catch_amalgamated.hpp>

#include "pticgof/error.hpp"
#include "pticgof/statistics.hpp"

#include <algorithm>
#include <random>

using namespace pticgof;
using Catch::Matchers::WithinAbs;

TEST_CASE("exact fit gives all-zero statistics", "[statistics]") {
    const auto s = compute_statistics({{0.0, 0.0, 0.0}});
    for (Statistic k : kAllStatistics) CHECK(s[k] == 0.0);
}

TEST_CASE("statistics of d = (0.05, 0.10)", "[statistics]") {
    const auto s = compute_statistics({{0.05, 0.10}});
    CHECK(s.c_plus == 0.10);
    CHECK(s.c_minus == -0.05);
    CHECK(s.c == 0.10);
    CHECK_THAT(s.k, WithinAbs(0.05, 1e-15));
    CHECK_THAT(s.t1, WithinAbs(0.00625, 1e-15));
    CHECK_THAT(s.t2, WithinAbs(0.075, 1e-15));
}

TEST_CASE("statistics of d = (-0.2, 0.3)", "[statistics]") {
    const auto s = compute_statistics({{-0.2, 0.3}});
    CHECK(s.c_plus == 0.3);
    CHECK(s.c_minus == 0.2);
    CHECK(s.c == 0.3);
    CHECK_THAT(s.k, WithinAbs(0.5, 1e-15));
    CHECK_THAT(s.t1, WithinAbs(0.065, 1e-15));
    CHECK_THAT(s.t2, WithinAbs(0.25, 1e-15));
}

TEST_CASE("empty deviation vector is an error", "[statistics][errors]") {
    try {
        compute_statistics({});
        FAIL("expected EmptyDeviationVector");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyDeviationVector);
    }
}

TEST_CASE("uniformity test requires t_m < 1", "[statistics][errors]") {
    const auto sample = make_sample(validate_scheme({0, .5, 1.0}, {.5, 1}), {1, 1}, {1, 1});
    try {
        test_uniformity(sample);
        FAIL("expected TimeOutsideUnitInterval");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TimeOutsideUnitInterval);
    }
}

TEST_CASE("rejection needs strict exceedance", "[statistics][reject]") {
    StatisticSet critical{0.2361, 0.2597, 0.3140, 0.3157, 0.0284, 0.1420};

    StatisticSet tie{};
    tie.t2 = 0.1420;
    CHECK_FALSE(reject(tie, critical)[static_cast<std::size_t>(Statistic::T2)]);

    StatisticSet large{};
    large.c = 0.40;
    CHECK(reject(large, critical)[static_cast<std::size_t>(Statistic::C)]);

    const auto none = reject(StatisticSet{}, critical);
    CHECK(std::none_of(none.begin(), none.end(), [](bool b) { return b; }));
}

TEST_CASE("algebraic properties over random deviation vectors", "[statistics][property]") {
    std::mt19937_64 gen(31337);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> size(1, 12);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> d(static_cast<std::size_t>(size(gen)));
        for (auto& v : d) v = unit(gen);
        const auto s = compute_statistics({d});

        // c = max(c+, c-), k = c+ + c-
        REQUIRE(s.c == std::max(s.c_plus, s.c_minus));
        REQUIRE(s.k == s.c_plus + s.c_minus);
        // power means: t2^2 <= t1 <= c^2
        REQUIRE(s.t2 * s.t2 <= s.t1 * (1 + 1e-12));
        REQUIRE(s.t1 <= s.c * s.c * (1 + 1e-12));

        // negation swaps the one-sided statistics
        std::vector<double> negated(d.size());
        std::transform(d.begin(), d.end(), negated.begin(), [](double v) { return -v; });
        const auto n = compute_statistics({negated});
        REQUIRE(n.c_plus == s.c_minus);
        REQUIRE(n.c_minus == s.c_plus);
        REQUIRE(n.c == s.c);
        REQUIRE(n.k == s.k);
        REQUIRE(n.t1 == s.t1);
        REQUIRE(n.t2 == s.t2);

        // permutation invariance
        std::shuffle(d.begin(), d.end(), gen);
        const auto p = compute_statistics({d});
        REQUIRE(p.c_plus == s.c_plus);
        REQUIRE(p.c_minus == s.c_minus);
        REQUIRE(p.c == s.c);
        REQUIRE(p.k == s.k);
        REQUIRE_THAT(p.t1, WithinAbs(s.t1, 1e-14));
        REQUIRE_THAT(p.t2, WithinAbs(s.t2, 1e-14));
    }
}

TEST_CASE("statistic names follow the serialization keys", "[statistics]") {
    std::vector<std::string> names;
    for (Statistic s : kAllStatistics) names.emplace_back(statistic_name(s));
    CHECK(names == std::vector<std::string>{"c_plus", "c_minus", "c", "k", "t1", "t2"});
}
