#pragma once

#include "pticgof/montecarlo.hpp"
#include "pticgof/scheme.hpp"
#include "pticgof/statistics.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pticgof::io {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// `# key=value` lines written ahead of every CSV table so each file carries
/// the settings that produced it.
using Metadata = std::vector<std::pair<std::string, std::string>>;
void write_metadata(std::ostream& out, const Metadata& metadata);
std::string join(std::span<const double> values);

// --- schemes and samples --------------------------------------------------

struct NamedScheme {
    CensoringScheme scheme;
    std::string id;
};

/// {"times":[...], "percentages":[...]} with an optional "id".
std::string scheme_to_json(const CensoringScheme& scheme, const std::string& id = {});
NamedScheme scheme_from_json(const std::string& text);

/// {"times":[...], "percentages":[...], "n":N, "failures":[...], "removals":[...]}
std::string sample_to_json(const CensoredSample& sample);
CensoredSample sample_from_json(const std::string& text);

/// Sample as read from CSV: one row `t_i,x_i,r_i` per inspection. The
/// percentages travel in an optional `# percentages=...` comment; other
/// comment lines are kept verbatim so writing the record back reproduces the
/// input byte for byte.
struct SampleRecord {
    std::vector<std::string> comments;  // without the leading '#', in file order
    std::vector<double> times;          // t_1..t_m
    std::vector<std::int64_t> failures;
    std::vector<std::int64_t> removals;
    std::optional<std::vector<double>> percentages;
};

SampleRecord read_sample_csv(std::istream& in);
void write_sample_csv(std::ostream& out, const SampleRecord& record);

SampleRecord to_record(const CensoredSample& sample, std::vector<std::string> comments = {});

/// Builds the sample with n = sum(X_i + R_i). Percentages come from the record
/// or, when it has none, from `fallback`; ParseError if neither is available.
CensoredSample to_sample(const SampleRecord& record,
                         const std::optional<std::vector<double>>& fallback = std::nullopt);

// --- statistics -----------------------------------------------------------

std::string statistics_csv_header();
std::string statistics_csv_row(const StatisticSet& stats);
std::string statistics_to_json(const StatisticSet& stats);
StatisticSet statistics_from_json(const std::string& text);

// --- critical values ------------------------------------------------------

/// One row of a critical value CSV. The scheme itself is identified by id.
struct CriticalRecord {
    std::string scheme_id;
    std::int64_t n = 0;
    double level = 0.0;
    std::int64_t replications = 0;
    std::uint64_t seed = 0;
    StatisticSet critical;
};

std::string critical_csv_header();
std::string critical_csv_row(const CriticalValueTable& table);
std::vector<CriticalRecord> read_critical_csv(std::istream& in);
CriticalValueTable to_table(const CriticalRecord& record, const CensoringScheme& scheme);

std::string critical_to_json(const CriticalValueTable& table);
CriticalValueTable critical_from_json(const std::string& text);

// --- power ----------------------------------------------------------------

/// Header `family,param,stat,power,stderr`; six rows per estimate.
std::string power_csv_header();
std::string power_csv_rows(const PowerEstimate& estimate);
std::string power_to_json(std::span<const PowerEstimate> estimates);

} // namespace pticgof::io
