#pragma once

#include "pticgof/sampler.hpp"
#include "pticgof/scheme.hpp"
#include "pticgof/statistics.hpp"

#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pticgof {

/// Monotone piecewise-linear CDF through tabulated (x, F(x)) points. Values
/// outside the table are held at the first/last tabulated F.
class TabulatedCdf {
public:
    /// x strictly increasing, F nondecreasing in [0,1], at least two points.
    TabulatedCdf(std::vector<double> x, std::vector<double> f);

    /// CSV with header row and columns x,F.
    static TabulatedCdf from_csv(std::istream& in);

    double operator()(double x) const noexcept;

private:
    std::vector<double> x_;
    std::vector<double> f_;
};

enum class FamilyTag { Uniform, Lehmann, Centered, Compressed, Custom };

std::string_view family_name(FamilyTag tag) noexcept;

/// A completely specified lifetime distribution on [0,1] used as an alternative:
///   lehmann     F(x) = x^alpha,                          alpha > 0
///   centered    F(x) = (2x)^beta / 2 for x <= 1/2,
///               1 - (2(1-x))^beta / 2 above,             beta > 0
///   compressed  F(x) = (x - gamma) / (1 - 2 gamma) on
///               [gamma, 1-gamma], 0 below, 1 above,      0 <= gamma < 1/2
///   uniform     F(x) = x
///   custom      a TabulatedCdf
/// Parameters are checked when the family is built (ParameterOutOfDomain).
/// The parametric families clamp x into [0,1] before evaluating.
class AlternativeFamily {
public:
    static AlternativeFamily uniform();
    static AlternativeFamily lehmann(double alpha);
    static AlternativeFamily centered(double beta);
    static AlternativeFamily compressed(double gamma);
    static AlternativeFamily custom(TabulatedCdf table, std::string label = "table");

    /// Parametric family by tag; used for power-curve grids.
    static AlternativeFamily make(FamilyTag tag, double parameter);

    /// Parses `uniform`, `lehmann:<a>`, `centered:<b>`, `compressed:<g>` or
    /// `table:<path.csv>`. Throws ParseError or ParameterOutOfDomain.
    static AlternativeFamily parse(std::string_view spec);

    FamilyTag tag() const noexcept { return tag_; }
    /// Family parameter; 0 for uniform and custom.
    double parameter() const noexcept { return parameter_; }
    /// `lehmann:2`, `uniform`, `table:<label>`.
    std::string to_string() const;

    double cdf(double x) const;
    LifetimeCdf as_cdf() const;

private:
    AlternativeFamily(FamilyTag tag, double parameter) : tag_(tag), parameter_(parameter) {}

    FamilyTag tag_;
    double parameter_;
    std::shared_ptr<const TabulatedCdf> table_;
    std::string label_;
};

double cdf_eval(const AlternativeFamily& family, double x);

/// Default power-curve grid: alpha and beta on 21 evenly spaced points in
/// [0.25, 3], gamma on 17 points in [0, 0.4]. Uniform gives {0}.
std::vector<double> default_grid(FamilyTag tag);

/// Re-times a scheme through a null CDF: t'_i = f0(t_i), percentages kept.
/// Throws FlatCdfAcrossInspections when two inspection times map to the same
/// value, FirstTimeNotZero when f0(t_0) != 0.
CensoringScheme transform_scheme(const CensoringScheme& scheme, const LifetimeCdf& f0);

/// The sample's counts placed on the transformed inspection times.
CensoredSample transform_sample(const CensoredSample& sample, const LifetimeCdf& f0);

/// Goodness-of-fit statistics for H0: F = f0, computed as the uniformity test
/// on (X_i, R_i, f0(t_i)). Needs f0(t_m) < 1.
StatisticSet test_general(const CensoredSample& sample, const LifetimeCdf& f0);

} // namespace pticgof
