#include "pticgof/alternatives.hpp"

#include "pticgof/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pticgof {

namespace {

double parse_double(std::string_view text, std::string_view context) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorCode::ParseError,
                    "expected a number for " + std::string(context) + ", got '" + std::string(text) + "'");
    }
    return value;
}

std::string format_parameter(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

} // namespace

TabulatedCdf::TabulatedCdf(std::vector<double> x, std::vector<double> f) : x_(std::move(x)), f_(std::move(f)) {
    if (x_.size() != f_.size() || x_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "tabulated cdf needs at least two (x, F) points");
    }
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!(f_[i] >= 0.0 && f_[i] <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "tabulated F outside [0,1] at row " + std::to_string(i + 1));
        }
        if (i > 0 && !(x_[i] > x_[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "tabulated x not increasing at row " + std::to_string(i + 1));
        }
        if (i > 0 && f_[i] < f_[i - 1]) {
            throw Error(ErrorCode::NonMonotoneCdf, "tabulated F decreasing at row " + std::to_string(i + 1));
        }
    }
}

TabulatedCdf TabulatedCdf::from_csv(std::istream& in) {
    std::vector<double> x;
    std::vector<double> f;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::ParseError, "tabulated cdf row needs two columns: '" + line + "'");
        }
        x.push_back(parse_double(std::string_view(line).substr(0, comma), "x"));
        f.push_back(parse_double(std::string_view(line).substr(comma + 1), "F"));
    }
    return TabulatedCdf(std::move(x), std::move(f));
}

double TabulatedCdf::operator()(double x) const noexcept {
    if (x <= x_.front()) return f_.front();
    if (x >= x_.back()) return f_.back();
    const auto upper = std::upper_bound(x_.begin(), x_.end(), x);
    const auto hi = static_cast<std::size_t>(upper - x_.begin());
    const auto lo = hi - 1;
    const double w = (x - x_[lo]) / (x_[hi] - x_[lo]);
    return f_[lo] + w * (f_[hi] - f_[lo]);
}

std::string_view family_name(FamilyTag tag) noexcept {
    switch (tag) {
    case FamilyTag::Uniform: return "uniform";
    case FamilyTag::Lehmann: return "lehmann";
    case FamilyTag::Centered: return "centered";
    case FamilyTag::Compressed: return "compressed";
    case FamilyTag::Custom: return "table";
    }
    return "?";
}

AlternativeFamily AlternativeFamily::uniform() { return AlternativeFamily(FamilyTag::Uniform, 0.0); }

AlternativeFamily AlternativeFamily::lehmann(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(ErrorCode::ParameterOutOfDomain, "lehmann alpha must be > 0, got " + format_parameter(alpha));
    }
    return AlternativeFamily(FamilyTag::Lehmann, alpha);
}

AlternativeFamily AlternativeFamily::centered(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorCode::ParameterOutOfDomain, "centered beta must be > 0, got " + format_parameter(beta));
    }
    return AlternativeFamily(FamilyTag::Centered, beta);
}

AlternativeFamily AlternativeFamily::compressed(double gamma) {
    if (!(gamma >= 0.0 && gamma < 0.5)) {
        throw Error(ErrorCode::ParameterOutOfDomain,
                    "compressed gamma must lie in [0, 0.5), got " + format_parameter(gamma));
    }
    return AlternativeFamily(FamilyTag::Compressed, gamma);
}

AlternativeFamily AlternativeFamily::custom(TabulatedCdf table, std::string label) {
    AlternativeFamily family(FamilyTag::Custom, 0.0);
    family.table_ = std::make_shared<const TabulatedCdf>(std::move(table));
    family.label_ = std::move(label);
    return family;
}

AlternativeFamily AlternativeFamily::make(FamilyTag tag, double parameter) {
    switch (tag) {
    case FamilyTag::Uniform: return uniform();
    case FamilyTag::Lehmann: return lehmann(parameter);
    case FamilyTag::Centered: return centered(parameter);
    case FamilyTag::Compressed: return compressed(parameter);
    case FamilyTag::Custom: break;
    }
    throw Error(ErrorCode::InvalidArgument, "tabulated families have no parameter");
}

AlternativeFamily AlternativeFamily::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (name == "uniform") {
        if (!arg.empty()) throw Error(ErrorCode::ParseError, "uniform takes no parameter");
        return uniform();
    }
    if (colon == std::string_view::npos || arg.empty()) {
        throw Error(ErrorCode::ParseError, "family '" + std::string(spec) + "' needs ':<value>'");
    }
    if (name == "lehmann") return lehmann(parse_double(arg, "lehmann alpha"));
    if (name == "centered") return centered(parse_double(arg, "centered beta"));
    if (name == "compressed") return compressed(parse_double(arg, "compressed gamma"));
    if (name == "table") {
        std::ifstream in{std::string(arg)};
        if (!in) throw Error(ErrorCode::ParseError, "cannot open cdf table '" + std::string(arg) + "'");
        return custom(TabulatedCdf::from_csv(in), std::string(arg));
    }
    throw Error(ErrorCode::ParseError, "unknown family '" + std::string(name) + "'");
}

std::string AlternativeFamily::to_string() const {
    switch (tag_) {
    case FamilyTag::Uniform: return "uniform";
    case FamilyTag::Custom: return "table:" + label_;
    default: return std::string(family_name(tag_)) + ":" + format_parameter(parameter_);
    }
}

double AlternativeFamily::cdf(double x) const {
    if (tag_ == FamilyTag::Custom) return (*table_)(x);
    x = std::clamp(x, 0.0, 1.0);
    switch (tag_) {
    case FamilyTag::Uniform: return x;
    case FamilyTag::Lehmann: return std::pow(x, parameter_);
    case FamilyTag::Centered:
        if (x <= 0.5) return 0.5 * std::pow(2.0 * x, parameter_);
        return 1.0 - 0.5 * std::pow(2.0 * (1.0 - x), parameter_);
    case FamilyTag::Compressed: {
        if (x <= parameter_) return 0.0;
        if (x >= 1.0 - parameter_) return 1.0;
        return (x - parameter_) / (1.0 - 2.0 * parameter_);
    }
    case FamilyTag::Custom: break;
    }
    return x;
}

LifetimeCdf AlternativeFamily::as_cdf() const {
    return [family = *this](double x) { return family.cdf(x); };
}

double cdf_eval(const AlternativeFamily& family, double x) { return family.cdf(x); }

std::vector<double> default_grid(FamilyTag tag) {
    auto linspace = [](double lo, double hi, int points) {
        std::vector<double> grid(static_cast<std::size_t>(points));
        for (int k = 0; k < points; ++k) {
            grid[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (points - 1);
        }
        return grid;
    };
    switch (tag) {
    case FamilyTag::Lehmann:
    case FamilyTag::Centered: return linspace(0.25, 3.0, 21);
    case FamilyTag::Compressed: return linspace(0.0, 0.4, 17);
    case FamilyTag::Uniform: return {0.0};
    case FamilyTag::Custom: break;
    }
    throw Error(ErrorCode::InvalidArgument, "tabulated families have no parameter grid");
}

CensoringScheme transform_scheme(const CensoringScheme& scheme, const LifetimeCdf& f0) {
    std::vector<double> times;
    times.reserve(scheme.times().size());
    for (double t : scheme.times()) times.push_back(f0(t));
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw Error(ErrorCode::FlatCdfAcrossInspections,
                        "F0(t_" + std::to_string(i) + ") does not exceed F0(t_" + std::to_string(i - 1) + ")");
        }
    }
    std::vector<double> percentages(scheme.percentages().begin(), scheme.percentages().end());
    return validate_scheme(std::move(times), std::move(percentages));
}

CensoredSample transform_sample(const CensoredSample& sample, const LifetimeCdf& f0) {
    return make_sample(transform_scheme(sample.scheme(), f0),
                       std::vector<std::int64_t>(sample.failures().begin(), sample.failures().end()),
                       std::vector<std::int64_t>(sample.removals().begin(), sample.removals().end()));
}

StatisticSet test_general(const CensoredSample& sample, const LifetimeCdf& f0) {
    return test_uniformity(transform_sample(sample, f0));
}

} // namespace pticgof
