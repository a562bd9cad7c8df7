#include "pticgof/io.hpp"

#include "pticgof/error.hpp"

#include <json.hpp>

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace pticgof::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return text;
}

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ParseError, "bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
    std::vector<double> values;
    for (auto field : split(text)) values.push_back(parse_number<double>(field, what));
    return values;
}

/// Reads lines, dropping '\r'. Returns false at end of input.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

void expect_header(std::string_view line, std::string_view expected) {
    const auto got = split(line);
    const auto want = split(expected);
    if (got != want) {
        throw Error(ErrorCode::ParseError,
                    "expected header '" + std::string(expected) + "', got '" + std::string(line) + "'");
    }
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

template <class T>
T field(const json& object, const char* key) {
    if (!object.is_object() || !object.contains(key)) {
        throw Error(ErrorCode::ParseError, std::string("missing JSON field '") + key + "'");
    }
    try {
        return object.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("JSON field '") + key + "': " + e.what());
    }
}

json statistics_json(const StatisticSet& stats) {
    json object = json::object();
    for (Statistic s : kAllStatistics) object[std::string(statistic_name(s))] = stats[s];
    return object;
}

StatisticSet statistics_from(const json& object) {
    StatisticSet stats;
    for (Statistic s : kAllStatistics) stats[s] = field<double>(object, std::string(statistic_name(s)).c_str());
    return stats;
}

json scheme_json(const CensoringScheme& scheme) {
    return json{{"times", std::vector<double>(scheme.times().begin(), scheme.times().end())},
                {"percentages", std::vector<double>(scheme.percentages().begin(), scheme.percentages().end())}};
}

CensoringScheme scheme_from(const json& object) {
    return validate_scheme(field<std::vector<double>>(object, "times"),
                           field<std::vector<double>>(object, "percentages"));
}

} // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

std::string join(std::span<const double> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

void write_metadata(std::ostream& out, const Metadata& metadata) {
    for (const auto& [key, value] : metadata) out << "# " << key << '=' << value << '\n';
}

std::string scheme_to_json(const CensoringScheme& scheme, const std::string& id) {
    json object = scheme_json(scheme);
    if (!id.empty()) object["id"] = id;
    return object.dump();
}

NamedScheme scheme_from_json(const std::string& text) {
    const json object = parse_json(text);
    NamedScheme named{scheme_from(object), {}};
    if (object.contains("id")) named.id = field<std::string>(object, "id");
    return named;
}

std::string sample_to_json(const CensoredSample& sample) {
    json object = scheme_json(sample.scheme());
    object["n"] = sample.n();
    object["failures"] = std::vector<std::int64_t>(sample.failures().begin(), sample.failures().end());
    object["removals"] = std::vector<std::int64_t>(sample.removals().begin(), sample.removals().end());
    return object.dump();
}

CensoredSample sample_from_json(const std::string& text) {
    const json object = parse_json(text);
    auto sample = make_sample(scheme_from(object), field<std::vector<std::int64_t>>(object, "failures"),
                              field<std::vector<std::int64_t>>(object, "removals"));
    if (object.contains("n") && field<std::int64_t>(object, "n") != sample.n()) {
        throw Error(ErrorCode::InvalidSample, "n does not equal the sum of failures and removals");
    }
    return sample;
}

SampleRecord read_sample_csv(std::istream& in) {
    static constexpr std::string_view kPercentagesKey = "percentages=";
    SampleRecord record;
    std::string line;
    bool header_seen = false;
    std::size_t line_number = 0;
    while (next_line(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        if (line.front() == '#') {
            const auto body = trim(std::string_view(line).substr(1));
            if (body.starts_with(kPercentagesKey)) {
                record.percentages = parse_list(body.substr(kPercentagesKey.size()), "percentage");
            } else {
                record.comments.push_back(line.substr(1));
            }
            continue;
        }
        if (!header_seen) {
            expect_header(line, "t_i,x_i,r_i");
            header_seen = true;
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != 3) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_number) + ": expected 3 columns");
        }
        record.times.push_back(parse_number<double>(fields[0], "time"));
        record.failures.push_back(parse_number<std::int64_t>(fields[1], "failure count"));
        record.removals.push_back(parse_number<std::int64_t>(fields[2], "removal count"));
    }
    if (!header_seen) throw Error(ErrorCode::ParseError, "sample CSV has no header row");
    if (record.times.empty()) throw Error(ErrorCode::ParseError, "sample CSV has no data rows");
    return record;
}

void write_sample_csv(std::ostream& out, const SampleRecord& record) {
    for (const auto& comment : record.comments) out << '#' << comment << '\n';
    if (record.percentages) out << "# percentages=" << join(*record.percentages) << '\n';
    out << "t_i,x_i,r_i\n";
    for (std::size_t i = 0; i < record.times.size(); ++i) {
        out << format_double(record.times[i]) << ',' << record.failures[i] << ',' << record.removals[i] << '\n';
    }
}

SampleRecord to_record(const CensoredSample& sample, std::vector<std::string> comments) {
    const auto times = sample.scheme().times();
    const auto percentages = sample.scheme().percentages();
    return SampleRecord{std::move(comments),
                        std::vector<double>(times.begin() + 1, times.end()),
                        std::vector<std::int64_t>(sample.failures().begin(), sample.failures().end()),
                        std::vector<std::int64_t>(sample.removals().begin(), sample.removals().end()),
                        std::vector<double>(percentages.begin(), percentages.end())};
}

CensoredSample to_sample(const SampleRecord& record, const std::optional<std::vector<double>>& fallback) {
    const auto& percentages = record.percentages ? record.percentages : fallback;
    if (!percentages) {
        throw Error(ErrorCode::ParseError, "sample has no withdrawal percentages; supply the scheme");
    }
    std::vector<double> times{0.0};
    times.insert(times.end(), record.times.begin(), record.times.end());
    return make_sample(validate_scheme(std::move(times), *percentages), record.failures, record.removals);
}

std::string statistics_csv_header() { return "c_plus,c_minus,c,k,t1,t2"; }

std::string statistics_csv_row(const StatisticSet& stats) {
    std::string row;
    for (Statistic s : kAllStatistics) {
        if (!row.empty()) row += ',';
        row += format_double(stats[s]);
    }
    return row;
}

std::string statistics_to_json(const StatisticSet& stats) { return statistics_json(stats).dump(); }

StatisticSet statistics_from_json(const std::string& text) { return statistics_from(parse_json(text)); }

std::string critical_csv_header() { return "scheme_id,n,level,B,seed," + statistics_csv_header(); }

std::string critical_csv_row(const CriticalValueTable& table) {
    std::ostringstream os;
    os << table.scheme_id << ',' << table.n << ',' << format_double(table.level) << ',' << table.replications
       << ',' << table.seed << ',' << statistics_csv_row(table.critical);
    return os.str();
}

std::vector<CriticalRecord> read_critical_csv(std::istream& in) {
    std::vector<CriticalRecord> records;
    std::string line;
    bool header_seen = false;
    while (next_line(in, line)) {
        if (trim(line).empty() || line.front() == '#') continue;
        if (!header_seen) {
            expect_header(line, critical_csv_header());
            header_seen = true;
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != 5 + kStatisticCount) {
            throw Error(ErrorCode::ParseError, "critical value row needs 11 columns: '" + line + "'");
        }
        CriticalRecord record;
        record.scheme_id = std::string(fields[0]);
        record.n = parse_number<std::int64_t>(fields[1], "n");
        record.level = parse_number<double>(fields[2], "level");
        record.replications = parse_number<std::int64_t>(fields[3], "B");
        record.seed = parse_number<std::uint64_t>(fields[4], "seed");
        for (std::size_t i = 0; i < kStatisticCount; ++i) {
            record.critical[kAllStatistics[i]] = parse_number<double>(fields[5 + i], "critical value");
        }
        records.push_back(std::move(record));
    }
    if (!header_seen) throw Error(ErrorCode::ParseError, "critical value CSV has no header row");
    return records;
}

CriticalValueTable to_table(const CriticalRecord& record, const CensoringScheme& scheme) {
    return CriticalValueTable{scheme,       record.scheme_id,     record.n,       record.level,
                              record.replications, record.seed, record.critical};
}

std::string critical_to_json(const CriticalValueTable& table) {
    json object{{"scheme_id", table.scheme_id},
                {"scheme", scheme_json(table.scheme)},
                {"n", table.n},
                {"level", table.level},
                {"B", table.replications},
                {"seed", table.seed},
                {"critical", statistics_json(table.critical)}};
    return object.dump();
}

CriticalValueTable critical_from_json(const std::string& text) {
    const json object = parse_json(text);
    return CriticalValueTable{scheme_from(field<json>(object, "scheme")),
                              field<std::string>(object, "scheme_id"),
                              field<std::int64_t>(object, "n"),
                              field<double>(object, "level"),
                              field<std::int64_t>(object, "B"),
                              field<std::uint64_t>(object, "seed"),
                              statistics_from(field<json>(object, "critical"))};
}

std::string power_csv_header() { return "family,param,stat,power,stderr"; }

std::string power_csv_rows(const PowerEstimate& estimate) {
    std::ostringstream os;
    const auto family = std::string(family_name(estimate.family.tag()));
    const auto param = format_double(estimate.family.parameter());
    for (Statistic s : kAllStatistics) {
        const auto i = static_cast<std::size_t>(s);
        os << family << ',' << param << ',' << statistic_name(s) << ',' << format_double(estimate.power[i]) << ','
           << format_double(estimate.standard_error[i]) << '\n';
    }
    return os.str();
}

std::string power_to_json(std::span<const PowerEstimate> estimates) {
    json rows = json::array();
    for (const auto& estimate : estimates) {
        json power = json::object();
        json stderr_values = json::object();
        for (Statistic s : kAllStatistics) {
            const auto i = static_cast<std::size_t>(s);
            power[std::string(statistic_name(s))] = estimate.power[i];
            stderr_values[std::string(statistic_name(s))] = estimate.standard_error[i];
        }
        rows.push_back(json{{"family", std::string(family_name(estimate.family.tag()))},
                            {"param", estimate.family.parameter()},
                            {"B", estimate.replications},
                            {"power", power},
                            {"stderr", stderr_values}});
    }
    return rows.dump();
}

} // namespace pticgof::io
