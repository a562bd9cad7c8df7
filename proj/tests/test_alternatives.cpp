#include <catch_amalgamated.hpp>

#include "pticgof/alternatives.hpp"
#include "pticgof/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace pticgof;
using Catch::Matchers::WithinAbs;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected pticgof::Error");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("family CDF values", "[alternatives]") {
    CHECK(cdf_eval(AlternativeFamily::lehmann(2.0), 0.5) == 0.25);
    for (double beta : {0.3, 1.0, 2.7}) CHECK(cdf_eval(AlternativeFamily::centered(beta), 0.5) == 0.5);
    CHECK(cdf_eval(AlternativeFamily::compressed(0.25), 0.5) == 0.5);
    CHECK(cdf_eval(AlternativeFamily::compressed(0.25), 0.2) == 0.0);
    CHECK(cdf_eval(AlternativeFamily::compressed(0.25), 0.8) == 1.0);
    CHECK_THAT(cdf_eval(AlternativeFamily::centered(2.0), 0.25), WithinAbs(0.125, 1e-15));
    CHECK_THAT(cdf_eval(AlternativeFamily::centered(2.0), 0.75), WithinAbs(0.875, 1e-15));
}

TEST_CASE("parametric families clamp outside [0,1]", "[alternatives]") {
    const auto lehmann = AlternativeFamily::lehmann(0.5);
    CHECK(lehmann.cdf(-0.3) == 0.0);
    CHECK(lehmann.cdf(1.7) == 1.0);
}

TEST_CASE("parameters are checked at construction", "[alternatives][errors]") {
    CHECK(code_of([] { AlternativeFamily::lehmann(0.0); }) == ErrorCode::ParameterOutOfDomain);
    CHECK(code_of([] { AlternativeFamily::centered(-1.0); }) == ErrorCode::ParameterOutOfDomain);
    CHECK(code_of([] { AlternativeFamily::compressed(0.5); }) == ErrorCode::ParameterOutOfDomain);
    CHECK(code_of([] { AlternativeFamily::compressed(-0.01); }) == ErrorCode::ParameterOutOfDomain);
}

TEST_CASE("every family is a CDF on [0,1]", "[alternatives][property]") {
    std::vector<AlternativeFamily> families{AlternativeFamily::uniform()};
    for (double a : {0.1, 0.25, 0.5, 1.0, 1.5, 3.0, 8.0}) {
        families.push_back(AlternativeFamily::lehmann(a));
        families.push_back(AlternativeFamily::centered(a));
    }
    for (double g : {0.0, 0.05, 0.2, 0.4, 0.49}) families.push_back(AlternativeFamily::compressed(g));
    for (const auto& family : families) {
        INFO(family.to_string());
        CHECK(family.cdf(0.0) == 0.0);
        CHECK(family.cdf(1.0) == 1.0);
        double previous = 0.0;
        for (int k = 0; k <= 2000; ++k) {
            const double value = family.cdf(k / 2000.0);
            REQUIRE(value >= previous);
            REQUIRE(value <= 1.0);
            previous = value;
        }
    }
}

TEST_CASE("null members of each family coincide with the uniform CDF", "[alternatives][property]") {
    const auto lehmann = AlternativeFamily::lehmann(1.0);
    const auto centered = AlternativeFamily::centered(1.0);
    const auto compressed = AlternativeFamily::compressed(0.0);
    for (int k = 0; k <= 4096; ++k) {
        const double x = k / 4096.0;
        REQUIRE(lehmann.cdf(x) == x);
        REQUIRE(centered.cdf(x) == x);
        REQUIRE(compressed.cdf(x) == x);
    }
}

TEST_CASE("family specs parse like the CLI flag", "[alternatives][parse]") {
    CHECK(AlternativeFamily::parse("lehmann:2.0").to_string() == "lehmann:2");
    CHECK(AlternativeFamily::parse("centered:0.5").tag() == FamilyTag::Centered);
    CHECK(AlternativeFamily::parse("compressed:0.25").parameter() == 0.25);
    CHECK(AlternativeFamily::parse("uniform").tag() == FamilyTag::Uniform);
    CHECK(code_of([] { AlternativeFamily::parse("lehmann"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { AlternativeFamily::parse("lehmann:abc"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { AlternativeFamily::parse("weibull:2"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { AlternativeFamily::parse("compressed:0.7"); }) == ErrorCode::ParameterOutOfDomain);
    CHECK(code_of([] { AlternativeFamily::parse("table:/nonexistent/file.csv"); }) == ErrorCode::ParseError);
}

TEST_CASE("tabulated CDF interpolates linearly", "[alternatives][table]") {
    std::istringstream csv("x,F\n0,0\n0.5,0.2\n1,1\n");
    const auto table = TabulatedCdf::from_csv(csv);
    CHECK(table(0.25) == Catch::Approx(0.1));
    CHECK(table(0.75) == Catch::Approx(0.6));
    CHECK(table(-1.0) == 0.0);
    CHECK(table(2.0) == 1.0);

    const auto path = std::string("tabulated_cdf_test.csv");
    std::ofstream(path) << "x,F\n0,0\n1,1\n";
    const auto family = AlternativeFamily::parse("table:" + path);
    CHECK(family.tag() == FamilyTag::Custom);
    CHECK(family.cdf(0.3) == Catch::Approx(0.3));

    std::istringstream decreasing("x,F\n0,0.5\n1,0.2\n");
    CHECK(code_of([&] { TabulatedCdf::from_csv(decreasing); }) == ErrorCode::NonMonotoneCdf);
}

TEST_CASE("default power-curve grids", "[alternatives]") {
    const auto alpha = default_grid(FamilyTag::Lehmann);
    REQUIRE(alpha.size() == 21);
    CHECK(alpha.front() == 0.25);
    CHECK(alpha.back() == 3.0);
    CHECK(default_grid(FamilyTag::Centered).size() == 21);
    const auto gamma = default_grid(FamilyTag::Compressed);
    REQUIRE(gamma.size() == 17);
    CHECK(gamma.front() == 0.0);
    CHECK_THAT(gamma.back(), WithinAbs(0.4, 1e-15));
}

TEST_CASE("transform_scheme maps inspection times through F0", "[alternatives][transform]") {
    const auto scheme = validate_scheme({0, .5, .9}, {.5, 1});
    CHECK(transform_scheme(scheme, [](double x) { return x; }) == scheme);

    const auto squared = transform_scheme(scheme, [](double x) { return x * x; });
    CHECK(squared.time(1) == 0.25);
    CHECK_THAT(squared.time(2), WithinAbs(0.81, 1e-15));
    CHECK(squared.percentage(1) == 0.5);

    const LifetimeCdf exponential = [](double t) { return 1.0 - std::exp(-t); };
    const auto expo = transform_scheme(validate_scheme({0, 0.693, 1.386}, {.5, 1}), exponential);
    CHECK(expo.time(0) == 0.0);
    CHECK_THAT(expo.time(1), WithinAbs(0.5, 1e-3));
    CHECK_THAT(expo.time(2), WithinAbs(0.75, 1e-3));
    CHECK(expo.time(1) == 1.0 - std::exp(-0.693));

    const auto flat = [](double x) { return std::min(x, 0.4); };
    CHECK(code_of([&] { transform_scheme(scheme, flat); }) == ErrorCode::FlatCdfAcrossInspections);
    CHECK(code_of([&] { transform_scheme(scheme, [](double x) { return 0.1 + 0.5 * x; }); }) ==
          ErrorCode::FirstTimeNotZero);
}

TEST_CASE("general test is the uniformity test on transformed times", "[alternatives][transform]") {
    const auto sample = make_sample(*builtin_scheme("t1p1"), {3, 5, 2, 4, 1}, {9, 5, 8, 2, 1});
    CHECK(test_general(sample, [](double x) { return x; }) == test_uniformity(sample));

    const LifetimeCdf exponential = [](double t) { return 1.0 - std::exp(-t); };
    const auto original = make_sample(validate_scheme({0, 0.693, 1.386}, {.5, 1}), {0, 0}, {20, 20});
    const auto stats = test_general(original, exponential);
    // estimate = 1 everywhere, so D_i = F0(t_i)
    const double d1 = 1.0 - std::exp(-0.693);
    const double d2 = 1.0 - std::exp(-1.386);
    CHECK(stats.c_plus == d2);
    CHECK(stats.c_minus == -d1);
    CHECK_THAT(stats.t1, WithinAbs((d1 * d1 + d2 * d2) / 2, 1e-15));
    CHECK(stats == compute_statistics(uniform_deviations(transform_sample(original, exponential))));

    // t_m maps to 1 under a CDF that saturates
    const auto saturating = [](double t) { return std::min(1.0, t / 1.386); };
    CHECK(code_of([&] { test_general(original, saturating); }) == ErrorCode::TimeOutsideUnitInterval);
}
