#ifndef TSA_DATAIO_HPP
#define TSA_DATAIO_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tsa/calibration.hpp"
#include "tsa/kinematics.hpp"
#include "tsa/lifecycle.hpp"

namespace tsa {

/// Physical description of one actuator build.
struct StringSystemConfig {
    std::size_t n_strings = 0;
    double string_diameter = 0.0;  // mm
    double twist_zone = 0.0;       // L, mm
    double separator = 0.0;        // S, mm
    std::optional<double> measured_bundle_diameter;  // mm
    std::optional<double> max_safe_turns;
    std::string label;
};

/// Measured bundle diameter when present, otherwise the packing model.
double bundle_diameter(const StringSystemConfig& cfg);

/// (L, S, r) for the kinematic model, r = bundle_diameter / 2.
KinematicParams kinematic_params(const StringSystemConfig& cfg);

// Parsers reject malformed input with ParseError; nothing is coerced or
// silently defaulted.

/// `key = value` lines, `#` starts a comment. Required keys: n_strings,
/// string_diameter_mm, twist_zone_mm, separator_mm. Optional:
/// bundle_diameter_mm, max_safe_turns, label.
StringSystemConfig parse_config(std::string_view text);

/// Header `turns,displacement_mm`; rows are sorted by turns on load.
MeasurementSeries parse_measurement_csv(std::string_view text);

/// Header `t_ms,turns,current_ma`; time must strictly increase.
CycleLog parse_cycle_log(std::string_view text);

/// Header `load_kgf,...` or `load_n,...` followed by turns_per_cycle,
/// cycles_endured, contraction_per_cycle_mm, total_contraction_mm. Loads are
/// stored in newtons either way.
std::vector<LifeCycleRecord> parse_lifecycle_csv(std::string_view text);

// Report tables -------------------------------------------------------------

enum class ColumnFormat {
    integer,     // 0 decimals
    length,      // mm, 2 decimals
    percent,     // 0 decimals
    rmse,        // mm, 2 decimals
    turns,       // 2 decimals
    scientific,  // 6 significant digits
    text,
};

struct ReportColumn {
    std::string name;
    ColumnFormat format = ColumnFormat::length;
};

using ReportCell = std::variant<double, std::string>;

struct ReportTable {
    std::vector<ReportColumn> columns;
    std::vector<std::vector<ReportCell>> rows;
};

/// Fixed-precision rendering of one value for a column format.
std::string format_value(double value, ColumnFormat format);

/// CSV with `\n` line endings; fields quoted only when they contain a comma,
/// quote or newline. Throws std::invalid_argument for ragged rows or a cell
/// type that does not match its column.
std::string write_report(const ReportTable& table);

/// Reads back a table written with the given column layout. Numeric cells
/// come back at their printed precision.
ReportTable parse_report(std::string_view text, const std::vector<ReportColumn>& columns);

/// Splits text into lines, accepting `\n` or `\r\n`; a trailing newline does
/// not produce an empty final line.
std::vector<std::string> split_lines(std::string_view text);

/// RFC 4180 field splitting for a single record.
std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_number);

}  // namespace tsa

#endif  // TSA_DATAIO_HPP
