#include "cli.hpp"

#include "pticgof/alternatives.hpp"
#include "pticgof/error.hpp"
#include "pticgof/io.hpp"
#include "pticgof/montecarlo.hpp"
#include "pticgof/sampler.hpp"
#include "pticgof/scheme.hpp"
#include "pticgof/statistics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace pticgof::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kOutputDirEnv = "PTICGOF_OUTPUT_DIR";

/// Bad flag value; reported with exit code 1.
struct UsageError {
    std::string flag;
    std::string message;
};

/// Unreadable or invalid input file; reported with exit code 2.
struct DataError {
    std::string message;
};

struct CommonOptions {
    std::int64_t n = kDefaultSampleSize;
    double level = kDefaultLevel;
    std::int64_t replications = kDefaultReplications;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string format = "csv";
    std::string out_path;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError{"cannot open '" + path.string() + "'"};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool has_json_extension(const fs::path& path) { return path.extension() == ".json"; }

/// --scheme accepts a builtin name (t1p1, ...) or a JSON file.
io::NamedScheme resolve_scheme(const std::string& spec) {
    if (auto builtin = builtin_scheme(spec)) return {*builtin, spec};
    const fs::path path(spec);
    if (!fs::exists(path)) {
        throw UsageError{"--scheme", "'" + spec + "' is neither a builtin scheme nor an existing file"};
    }
    try {
        auto named = io::scheme_from_json(read_file(path));
        if (named.id.empty()) named.id = path.stem().string();
        return named;
    } catch (const Error& e) {
        throw DataError{"scheme file '" + spec + "': " + e.what()};
    }
}

AlternativeFamily resolve_family(const std::string& flag, const std::string& spec) {
    try {
        return AlternativeFamily::parse(spec);
    } catch (const Error& e) {
        if (spec.starts_with("table:")) throw DataError{e.what()};
        throw UsageError{flag, e.what()};
    }
}

/// `a,b,c` or `lo:hi:count`.
std::vector<double> parse_grid(const std::string& text) {
    auto number = [&](std::string_view piece) {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
            throw UsageError{"--grid", "bad grid value '" + std::string(piece) + "'"};
        }
        return value;
    };
    std::vector<std::string_view> parts;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::string_view rest(text);
    while (true) {
        const auto pos = rest.find(sep);
        parts.push_back(rest.substr(0, pos));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    std::vector<double> grid;
    if (sep == ':') {
        if (parts.size() != 3) throw UsageError{"--grid", "range form is lo:hi:count"};
        const double lo = number(parts[0]);
        const double hi = number(parts[1]);
        const double count = number(parts[2]);
        if (count < 1 || count != std::floor(count)) throw UsageError{"--grid", "count must be a positive integer"};
        const auto points = static_cast<int>(count);
        for (int k = 0; k < points; ++k) grid.push_back(points == 1 ? lo : lo + (hi - lo) * k / (points - 1));
    } else {
        for (auto part : parts) grid.push_back(number(part));
    }
    return grid;
}

FamilyTag parse_family_tag(const std::string& name) {
    if (name == "lehmann") return FamilyTag::Lehmann;
    if (name == "centered") return FamilyTag::Centered;
    if (name == "compressed") return FamilyTag::Compressed;
    throw UsageError{"--family", "family must be lehmann, centered or compressed, got '" + name + "'"};
}

io::Metadata run_metadata(const std::string& command, const CommonOptions& options, double level) {
    return {{"command", command},
            {"n", std::to_string(options.n)},
            {"level", io::format_double(level)},
            {"B", std::to_string(options.replications)},
            {"seed", std::to_string(options.seed)}};
}

void add_scheme_metadata(io::Metadata& metadata, const io::NamedScheme& named) {
    metadata.emplace_back("scheme", named.id);
    metadata.emplace_back("times", io::join(named.scheme.times()));
    metadata.emplace_back("percentages", io::join(named.scheme.percentages()));
}

json metadata_json(const io::Metadata& metadata) {
    json object = json::object();
    for (const auto& [key, value] : metadata) {
        if (object.contains(key)) {
            if (!object[key].is_array()) object[key] = json::array({object[key]});
            object[key].push_back(value);
        } else {
            object[key] = value;
        }
    }
    return object;
}

/// Writes the finished document to --out (relative paths resolved against
/// $PTICGOF_OUTPUT_DIR when set) or to `out`.
void emit(const CommonOptions& options, const std::string& document, std::ostream& out) {
    if (options.out_path.empty()) {
        out << document;
        return;
    }
    fs::path path(options.out_path);
    if (path.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') path = fs::path(dir) / path;
    }
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError{"cannot write '" + path.string() + "'"};
    file << document;
}

/// Critical values from --critical (CSV or JSON) or, without it, computed now.
CriticalValueTable load_or_compute_critical(const std::string& critical_path, const io::NamedScheme& named,
                                            const CommonOptions& options) {
    if (critical_path.empty()) {
        return critical_values(named.scheme, options.n, options.level, options.replications, options.seed,
                               McOptions{options.threads}, named.id);
    }
    const auto text = read_file(critical_path);
    try {
        if (has_json_extension(critical_path)) {
            auto table = io::critical_from_json(text);
            if (!(table.scheme == named.scheme) || table.n != options.n) {
                throw Error(ErrorCode::SchemeMismatch, "critical values in '" + critical_path +
                                                           "' were computed for another scheme or n");
            }
            return table;
        }
        std::istringstream in(text);
        for (const auto& record : io::read_critical_csv(in)) {
            if (record.scheme_id == named.id && record.n == options.n) return io::to_table(record, named.scheme);
        }
        throw Error(ErrorCode::SchemeMismatch, "no row for scheme '" + named.id + "' with n=" +
                                                   std::to_string(options.n) + " in '" + critical_path + "'");
    } catch (const Error& e) {
        throw DataError{e.what()};
    }
}

void add_common(CLI::App* sub, CommonOptions& options, bool with_level) {
    sub->add_option("--n", options.n, "Initial sample size")->check(CLI::PositiveNumber);
    if (with_level) sub->add_option("--level", options.level, "Significance level")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--B", options.replications, "Monte Carlo replications")->check(CLI::PositiveNumber);
    sub->add_option("--seed", options.seed, "Master seed");
    sub->add_option("--threads", options.threads, "Worker threads (0 = auto); results do not depend on it");
    sub->add_option("--format", options.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", options.out_path, "Output file (default: stdout)");
}

// --- subcommands ------------------------------------------------------------

std::string cmd_critical_values(const std::vector<std::string>& scheme_specs, const CommonOptions& options) {
    std::vector<io::NamedScheme> schemes;
    for (const auto& spec : scheme_specs) {
        if (spec == "all") {
            for (const auto& name : builtin_scheme_names()) schemes.push_back(resolve_scheme(name));
        } else {
            schemes.push_back(resolve_scheme(spec));
        }
    }
    auto metadata = run_metadata("critical-values", options, options.level);
    for (const auto& named : schemes) add_scheme_metadata(metadata, named);

    std::vector<CriticalValueTable> tables;
    for (const auto& named : schemes) {
        tables.push_back(critical_values(named.scheme, options.n, options.level, options.replications, options.seed,
                                         McOptions{options.threads}, named.id));
    }
    std::ostringstream doc;
    if (options.format == "json") {
        json rows = json::array();
        for (const auto& table : tables) rows.push_back(json::parse(io::critical_to_json(table)));
        doc << json{{"metadata", metadata_json(metadata)}, {"tables", rows}}.dump(2) << '\n';
    } else {
        io::write_metadata(doc, metadata);
        doc << io::critical_csv_header() << '\n';
        for (const auto& table : tables) doc << io::critical_csv_row(table) << '\n';
    }
    return doc.str();
}

std::string cmd_power(const std::string& scheme_spec, const std::string& alt_spec, const std::string& critical_path,
                      const CommonOptions& options) {
    const auto named = resolve_scheme(scheme_spec);
    const auto family = resolve_family("--alt", alt_spec);
    const auto table = load_or_compute_critical(critical_path, named, options);
    const auto estimate = power(named.scheme, options.n, table, family, options.replications, options.seed,
                                McOptions{options.threads});

    auto metadata = run_metadata("power", options, table.level);
    add_scheme_metadata(metadata, named);
    metadata.emplace_back("alt", family.to_string());
    metadata.emplace_back("critical", critical_path.empty() ? "computed" : critical_path);
    metadata.emplace_back("critical_B", std::to_string(table.replications));
    metadata.emplace_back("critical_seed", std::to_string(table.seed));

    std::ostringstream doc;
    if (options.format == "json") {
        const std::vector<PowerEstimate> one{estimate};
        doc << json{{"metadata", metadata_json(metadata)}, {"power", json::parse(io::power_to_json(one))}}.dump(2)
            << '\n';
    } else {
        io::write_metadata(doc, metadata);
        doc << io::power_csv_header() << '\n' << io::power_csv_rows(estimate);
    }
    return doc.str();
}

std::string cmd_power_curve(const std::string& scheme_spec, const std::string& family_name_arg,
                            const std::string& grid_text, const std::string& critical_path,
                            const CommonOptions& options) {
    const auto named = resolve_scheme(scheme_spec);
    const FamilyTag tag = parse_family_tag(family_name_arg);
    const auto grid = grid_text.empty() ? default_grid(tag) : parse_grid(grid_text);
    for (double parameter : grid) {
        try {
            AlternativeFamily::make(tag, parameter);
        } catch (const Error& e) {
            throw UsageError{"--grid", e.what()};
        }
    }
    const auto table = load_or_compute_critical(critical_path, named, options);
    const auto curve = power_curve(named.scheme, options.n, table, tag, grid, options.replications, options.seed,
                                   McOptions{options.threads});

    auto metadata = run_metadata("power-curve", options, table.level);
    add_scheme_metadata(metadata, named);
    metadata.emplace_back("family", family_name_arg);
    metadata.emplace_back("grid", io::join(grid));
    metadata.emplace_back("critical", critical_path.empty() ? "computed" : critical_path);
    metadata.emplace_back("critical_B", std::to_string(table.replications));
    metadata.emplace_back("critical_seed", std::to_string(table.seed));

    std::ostringstream doc;
    if (options.format == "json") {
        doc << json{{"metadata", metadata_json(metadata)}, {"power", json::parse(io::power_to_json(curve))}}.dump(2)
            << '\n';
    } else {
        io::write_metadata(doc, metadata);
        doc << io::power_csv_header() << '\n';
        for (const auto& estimate : curve) doc << io::power_csv_rows(estimate);
    }
    return doc.str();
}

std::string cmd_test(const std::string& data_path, const std::string& null_spec, const std::string& scheme_spec,
                     const CommonOptions& options, bool skip_pvalues) {
    const auto text = read_file(data_path);
    std::optional<std::vector<double>> fallback;
    std::optional<io::NamedScheme> named;
    if (!scheme_spec.empty()) {
        named = resolve_scheme(scheme_spec);
        fallback = std::vector<double>(named->scheme.percentages().begin(), named->scheme.percentages().end());
    }
    const auto family = resolve_family("--null", null_spec);

    std::optional<CensoredSample> sample;
    try {
        if (has_json_extension(data_path)) {
            sample = io::sample_from_json(text);
        } else {
            std::istringstream in(text);
            sample = io::to_sample(io::read_sample_csv(in), fallback);
        }
    } catch (const Error& e) {
        throw DataError{"data file '" + data_path + "': " + e.what()};
    }
    if (named) {
        const auto times = sample->scheme().times();
        const auto expected = named->scheme.times();
        if (!std::equal(times.begin(), times.end(), expected.begin(), expected.end())) {
            throw DataError{"inspection times in '" + data_path + "' differ from scheme '" + named->id + "'"};
        }
    }

    const auto null_cdf = family.as_cdf();
    const auto observed = test_general(*sample, null_cdf);
    // Under H0 the transformed counts are a uniform sample on the transformed scheme.
    const auto uniform_scheme = transform_scheme(sample->scheme(), null_cdf);
    std::optional<PerStatistic<double>> pvalues;
    if (!skip_pvalues) {
        pvalues = p_value(observed, uniform_scheme, sample->n(), options.replications, options.seed,
                          McOptions{options.threads});
    }

    io::Metadata metadata{{"command", "test"},
                          {"data", data_path},
                          {"null", family.to_string()},
                          {"n", std::to_string(sample->n())},
                          {"B", skip_pvalues ? "0" : std::to_string(options.replications)},
                          {"seed", std::to_string(options.seed)},
                          {"times", io::join(sample->scheme().times())},
                          {"percentages", io::join(sample->scheme().percentages())}};

    std::ostringstream doc;
    if (options.format == "json") {
        json result{{"metadata", metadata_json(metadata)},
                    {"statistics", json::parse(io::statistics_to_json(observed))}};
        if (pvalues) {
            json p = json::object();
            for (Statistic s : kAllStatistics) p[std::string(statistic_name(s))] = (*pvalues)[static_cast<std::size_t>(s)];
            result["p_values"] = p;
        }
        doc << result.dump(2) << '\n';
    } else {
        io::write_metadata(doc, metadata);
        doc << "stat,value,p_value\n";
        for (Statistic s : kAllStatistics) {
            doc << statistic_name(s) << ',' << io::format_double(observed[s]) << ','
                << (pvalues ? io::format_double((*pvalues)[static_cast<std::size_t>(s)]) : std::string("NA")) << '\n';
        }
    }
    return doc.str();
}

std::string cmd_simulate(const std::string& scheme_spec, const std::string& alt_spec, std::int64_t count,
                         std::uint64_t first_index, const CommonOptions& options) {
    const auto named = resolve_scheme(scheme_spec);
    const auto family = resolve_family("--alt", alt_spec);
    const auto probs = interval_probabilities(named.scheme, family.as_cdf());
    std::vector<CensoredSample> samples;
    for (std::int64_t k = 0; k < count; ++k) {
        Stream rng(options.seed, first_index + static_cast<std::uint64_t>(k));
        samples.push_back(simulate_sample(named.scheme, options.n, probs, rng));
    }

    io::Metadata metadata{{"command", "simulate"},
                          {"scheme", named.id},
                          {"alt", family.to_string()},
                          {"n", std::to_string(options.n)},
                          {"seed", std::to_string(options.seed)},
                          {"index", std::to_string(first_index)},
                          {"count", std::to_string(count)}};

    std::ostringstream doc;
    if (options.format == "json") {
        json list = json::array();
        for (const auto& sample : samples) list.push_back(json::parse(io::sample_to_json(sample)));
        doc << json{{"metadata", metadata_json(metadata)}, {"samples", list}}.dump(2) << '\n';
    } else if (count == 1) {
        std::vector<std::string> comments;
        for (const auto& [key, value] : metadata) comments.push_back(" " + key + "=" + value);
        io::write_sample_csv(doc, io::to_record(samples.front(), std::move(comments)));
    } else {
        io::write_metadata(doc, metadata);
        doc << "# percentages=" << io::join(named.scheme.percentages()) << '\n';
        doc << "sample,t_i,x_i,r_i\n";
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const auto& sample = samples[k];
            for (std::size_t i = 0; i < sample.inspections(); ++i) {
                doc << first_index + k << ',' << io::format_double(sample.scheme().time(i + 1)) << ','
                    << sample.failures()[i] << ',' << sample.removals()[i] << '\n';
            }
        }
    }
    return doc.str();
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Goodness-of-fit tests under progressive Type-I interval censoring", "pticgof"};
    app.require_subcommand(1);

    CommonOptions options;

    std::vector<std::string> cv_schemes;
    auto* critical = app.add_subcommand("critical-values", "Monte Carlo critical values of the six statistics");
    critical->add_option("--scheme", cv_schemes, "Builtin name, JSON file, or 'all' (repeatable)")->required();
    add_common(critical, options, true);

    std::string power_scheme, power_alt, power_critical;
    auto* power_cmd = app.add_subcommand("power", "Power against one alternative");
    power_cmd->add_option("--scheme", power_scheme, "Builtin name or JSON file")->required();
    power_cmd->add_option("--alt", power_alt, "lehmann:<a> | centered:<b> | compressed:<g> | uniform | table:<csv>")
        ->required();
    power_cmd->add_option("--critical", power_critical, "Critical value CSV/JSON (default: compute with --seed)");
    add_common(power_cmd, options, true);

    std::string curve_scheme, curve_family, curve_grid, curve_critical;
    auto* curve_cmd = app.add_subcommand("power-curve", "Power over a parameter grid");
    curve_cmd->add_option("--scheme", curve_scheme, "Builtin name or JSON file")->required();
    curve_cmd->add_option("--family", curve_family, "lehmann | centered | compressed")->required();
    curve_cmd->add_option("--grid", curve_grid, "a,b,c or lo:hi:count (default: family grid)");
    curve_cmd->add_option("--critical", curve_critical, "Critical value CSV/JSON (default: compute with --seed)");
    add_common(curve_cmd, options, true);

    std::string test_data, test_null = "uniform", test_scheme;
    bool no_pvalues = false;
    auto* test_cmd = app.add_subcommand("test", "Statistics and Monte Carlo p-values for a data file");
    test_cmd->add_option("--data", test_data, "Sample CSV (t_i,x_i,r_i) or JSON")->required();
    test_cmd->add_option("--null", test_null, "Null distribution (uniform, lehmann:<a>, ..., table:<csv>)");
    test_cmd->add_option("--scheme", test_scheme, "Scheme supplying percentages when the data has none");
    test_cmd->add_flag("--no-pvalues", no_pvalues, "Only compute the statistics");
    add_common(test_cmd, options, false);

    std::string sim_scheme, sim_alt = "uniform";
    std::int64_t sim_count = 1;
    std::uint64_t sim_index = 0;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate censored samples");
    sim_cmd->add_option("--scheme", sim_scheme, "Builtin name or JSON file")->required();
    sim_cmd->add_option("--alt", sim_alt, "Lifetime distribution (default uniform)");
    sim_cmd->add_option("--count", sim_count, "Number of samples")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--index", sim_index, "Stream index of the first sample");
    add_common(sim_cmd, options, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "pticgof: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        std::string document;
        if (critical->parsed()) {
            document = cmd_critical_values(cv_schemes, options);
        } else if (power_cmd->parsed()) {
            document = cmd_power(power_scheme, power_alt, power_critical, options);
        } else if (curve_cmd->parsed()) {
            document = cmd_power_curve(curve_scheme, curve_family, curve_grid, curve_critical, options);
        } else if (test_cmd->parsed()) {
            document = cmd_test(test_data, test_null, test_scheme, options, no_pvalues);
        } else if (sim_cmd->parsed()) {
            document = cmd_simulate(sim_scheme, sim_alt, sim_count, sim_index, options);
        }
        emit(options, document, out);
        return kExitOk;
    } catch (const UsageError& e) {
        err << "pticgof: " << e.flag << ": " << e.message << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "pticgof: " << e.message << '\n';
        return kExitData;
    } catch (const Error& e) {
        err << "pticgof: " << e.what() << '\n';
        return kExitData;
    } catch (const fs::filesystem_error& e) {
        err << "pticgof: " << e.what() << '\n';
        return kExitData;
    }
}

} // namespace pticgof::cli
