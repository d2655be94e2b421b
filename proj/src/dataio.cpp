#include "tsa/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "tsa/bundle_geometry.hpp"
#include "tsa/errors.hpp"
#include "tsa/units.hpp"

namespace tsa {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<long long> to_integer(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

double number_field(std::string_view s, std::size_t line, const std::string& key) {
    const auto v = to_double(s);
    if (!v) throw ParseError(line, key, "not a number: '" + std::string(trim(s)) + "'");
    return *v;
}

// Header check shared by the CSV readers; returns the data lines with their
// 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> csv_body(std::string_view text, std::string_view header) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "", "missing header, expected '" + std::string(header) + "'");
    if (trim(lines.front()) != header) {
        throw ParseError(1, "", "bad header '" + std::string(trim(lines.front())) + "', expected '" +
                                    std::string(header) + "'");
    }
    std::vector<std::pair<std::size_t, std::string>> body;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        body.emplace_back(i + 1, lines[i]);
    }
    return body;
}

std::vector<std::string> expect_fields(const std::string& line, std::size_t line_number, std::size_t count) {
    std::vector<std::string> fields = split_csv_record(line, line_number);
    if (fields.size() != count) {
        throw ParseError(line_number, "", "expected " + std::to_string(count) + " fields, found " +
                                              std::to_string(fields.size()));
    }
    return fields;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

double bundle_diameter(const StringSystemConfig& cfg) {
    if (cfg.measured_bundle_diameter) return *cfg.measured_bundle_diameter;
    return bundle_diameter_packed(pack_bundle(cfg.n_strings, cfg.string_diameter));
}

KinematicParams kinematic_params(const StringSystemConfig& cfg) {
    KinematicParams p{cfg.twist_zone, cfg.separator, bundle_diameter(cfg) / 2.0};
    validate(p);
    return p;
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_number) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty() || was_quoted) throw ParseError(line_number, "", "stray quote");
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else {
            if (was_quoted) throw ParseError(line_number, "", "text after closing quote");
            field += c;
        }
    }
    if (quoted) throw ParseError(line_number, "", "unterminated quote");
    fields.push_back(std::move(field));
    return fields;
}

StringSystemConfig parse_config(std::string_view text) {
    static const std::set<std::string, std::less<>> kKnown = {
        "n_strings",          "string_diameter_mm", "twist_zone_mm", "separator_mm",
        "bundle_diameter_mm", "max_safe_turns",     "label"};

    StringSystemConfig cfg;
    std::set<std::string, std::less<>> seen;
    const std::vector<std::string> lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = lines[i];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "", "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!kKnown.contains(key)) throw ParseError(line_no, key, "unknown key");
        if (!seen.insert(key).second) throw ParseError(line_no, key, "duplicate key");
        if (value.empty()) throw ParseError(line_no, key, "missing value");

        if (key == "label") {
            cfg.label = std::string(value);
        } else if (key == "n_strings") {
            const auto n = to_integer(value);
            if (!n) throw ParseError(line_no, key, "not an integer: '" + std::string(value) + "'");
            if (*n < 1) throw ParseError(line_no, key, "invariant violation: string count must be >= 1");
            cfg.n_strings = static_cast<std::size_t>(*n);
        } else {
            const double v = number_field(value, line_no, key);
            const bool ok = key == "separator_mm" ? v >= 0.0 : v > 0.0;
            if (!ok) throw ParseError(line_no, key, "invariant violation: value out of range");
            if (key == "string_diameter_mm") cfg.string_diameter = v;
            else if (key == "twist_zone_mm") cfg.twist_zone = v;
            else if (key == "separator_mm") cfg.separator = v;
            else if (key == "bundle_diameter_mm") cfg.measured_bundle_diameter = v;
            else if (key == "max_safe_turns") cfg.max_safe_turns = v;
        }
    }
    for (const char* required : {"n_strings", "string_diameter_mm", "twist_zone_mm", "separator_mm"}) {
        if (!seen.contains(required)) throw ParseError(0, required, "missing required key " + std::string(required));
    }
    return cfg;
}

MeasurementSeries parse_measurement_csv(std::string_view text) {
    struct Row {
        MeasurementSample sample;
        std::size_t line;
    };
    std::vector<Row> rows;
    for (const auto& [line_no, line] : csv_body(text, "turns,displacement_mm")) {
        const auto f = expect_fields(line, line_no, 2);
        const double turns = number_field(f[0], line_no, "turns");
        const double x = number_field(f[1], line_no, "displacement_mm");
        if (turns < 0.0) throw ParseError(line_no, "turns", "negative turns");
        if (x < 0.0) throw ParseError(line_no, "displacement_mm", "negative displacement");
        rows.push_back({{turns, x}, line_no});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.sample.turns < b.sample.turns; });
    MeasurementSeries series;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].sample.turns == rows[i - 1].sample.turns) {
            const std::size_t line = std::max(rows[i].line, rows[i - 1].line);
            throw ParseError(line, "turns", "duplicate turns=" + fmt::format("{}", rows[i].sample.turns));
        }
        series.samples.push_back(rows[i].sample);
    }
    return series;
}

CycleLog parse_cycle_log(std::string_view text) {
    CycleLog log;
    for (const auto& [line_no, line] : csv_body(text, "t_ms,turns,current_ma")) {
        const auto f = expect_fields(line, line_no, 3);
        CycleSample s;
        s.t_ms = number_field(f[0], line_no, "t_ms");
        s.turns = number_field(f[1], line_no, "turns");
        s.current_ma = number_field(f[2], line_no, "current_ma");
        if (s.current_ma < 0.0) throw ParseError(line_no, "current_ma", "negative current");
        if (!log.samples.empty() && !(s.t_ms > log.samples.back().t_ms)) {
            throw ParseError(line_no, "t_ms", "time must strictly increase");
        }
        log.samples.push_back(s);
    }
    return log;
}

std::vector<LifeCycleRecord> parse_lifecycle_csv(std::string_view text) {
    constexpr std::string_view kRest = ",turns_per_cycle,cycles_endured,contraction_per_cycle_mm,total_contraction_mm";
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "", "missing header");
    const std::string header(trim(lines.front()));
    double to_newtons = 0.0;
    if (header == "load_kgf" + std::string(kRest)) to_newtons = kNewtonsPerKgf;
    else if (header == "load_n" + std::string(kRest)) to_newtons = 1.0;
    else throw ParseError(1, "", "bad header '" + header + "'");

    std::vector<LifeCycleRecord> out;
    for (const auto& [line_no, line] : csv_body(text, header)) {
        const auto f = expect_fields(line, line_no, 5);
        LifeCycleRecord rec;
        rec.load = number_field(f[0], line_no, "load") * to_newtons;
        rec.turns_per_cycle = number_field(f[1], line_no, "turns_per_cycle");
        const auto cycles = to_integer(f[2]);
        if (!cycles) throw ParseError(line_no, "cycles_endured", "not an integer");
        if (*cycles < 1) throw ParseError(line_no, "cycles_endured", "must be positive");
        rec.cycles_endured = static_cast<std::uint64_t>(*cycles);
        rec.contraction_per_cycle = number_field(f[3], line_no, "contraction_per_cycle_mm");
        rec.published_total = number_field(f[4], line_no, "total_contraction_mm");
        try {
            validate(rec);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, "", e.what());
        }
        out.push_back(rec);
    }
    return out;
}

std::string format_value(double value, ColumnFormat format) {
    std::string s;
    switch (format) {
        case ColumnFormat::integer:
        case ColumnFormat::percent: s = fmt::format("{:.0f}", value); break;
        case ColumnFormat::length:
        case ColumnFormat::rmse: s = fmt::format("{:.2f}", value); break;
        case ColumnFormat::turns: s = fmt::format("{:.2f}", value); break;
        case ColumnFormat::scientific: s = fmt::format("{:.6g}", value); break;
        case ColumnFormat::text: throw std::invalid_argument("text column cannot format a number");
    }
    // "-0.00" and friends print as zero
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string write_report(const ReportTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += csv_escape(table.columns[c].name);
    }
    out += '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("report row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                        " cells, expected " + std::to_string(table.columns.size()));
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            const ColumnFormat f = table.columns[c].format;
            if (const auto* text = std::get_if<std::string>(&row[c])) {
                if (f != ColumnFormat::text) throw std::invalid_argument("text cell in numeric column " + table.columns[c].name);
                out += csv_escape(*text);
            } else {
                if (f == ColumnFormat::text) throw std::invalid_argument("numeric cell in text column " + table.columns[c].name);
                out += format_value(std::get<double>(row[c]), f);
            }
        }
        out += '\n';
    }
    return out;
}

ReportTable parse_report(std::string_view text, const std::vector<ReportColumn>& columns) {
    ReportTable table;
    table.columns = columns;
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "", "missing header");
    const auto header = split_csv_record(lines.front(), 1);
    if (header.size() != columns.size()) throw ParseError(1, "", "header width mismatch");
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (header[c] != columns[c].name) throw ParseError(1, header[c], "unexpected column name");
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = expect_fields(lines[i], i + 1, columns.size());
        std::vector<ReportCell> row;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].format == ColumnFormat::text) row.emplace_back(fields[c]);
            else row.emplace_back(number_field(fields[c], i + 1, columns[c].name));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace tsa
