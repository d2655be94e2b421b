#include "tsa/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsa/bundle_geometry.hpp"
#include "tsa/calibration.hpp"
#include "tsa/dataio.hpp"
#include "tsa/errors.hpp"
#include "tsa/kinematics.hpp"
#include "tsa/lifecycle.hpp"
#include "tsa/plot.hpp"
#include "tsa/units.hpp"

namespace tsa::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kBundledCounts[] = {2, 4, 6, 8};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
}

// Parse errors get the file name prepended so the message is actionable.
template <typename Parser>
auto parse_file(const fs::path& path, Parser parser) {
    const std::string text = read_file(path);
    try {
        return parser(text);
    } catch (const ParseError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

StringSystemConfig load_config(const fs::path& path) { return parse_file(path, parse_config); }

fs::path bundled_config(const fs::path& dir, int n) { return dir / ("n" + std::to_string(n) + ".cfg"); }

fs::path bundled_series(const fs::path& dir, int n) {
    return dir / ("fig3_n" + std::to_string(n) + "_approx.csv");
}

ReportTable load_reference(const fs::path& path, std::vector<ReportColumn> columns) {
    return parse_file(path, [&](std::string_view text) { return parse_report(text, columns); });
}

double num(const ReportCell& cell) { return std::get<double>(cell); }

void require_non_negative(double v, const char* flag) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError(std::string(flag) + " must be a non-negative number");
}

// ---------------------------------------------------------------------------
// reproduce

std::string table1(const fs::path& dir) {
    ReportTable t{{{"n_strings", ColumnFormat::integer},
                   {"twist_zone_mm", ColumnFormat::length},
                   {"separator_mm", ColumnFormat::length},
                   {"measured_diameter_mm", ColumnFormat::length},
                   {"packed_diameter_mm", ColumnFormat::length},
                   {"ring_diameter_mm", ColumnFormat::length}},
                  {}};
    for (int n : kBundledCounts) {
        const StringSystemConfig cfg = load_config(bundled_config(dir, n));
        const double measured = cfg.measured_bundle_diameter.value_or(NAN);
        t.rows.push_back({static_cast<double>(cfg.n_strings), cfg.twist_zone, cfg.separator, measured,
                          bundle_diameter_packed(pack_bundle(cfg.n_strings, cfg.string_diameter)),
                          bundle_diameter_ring(cfg.n_strings, cfg.string_diameter)});
    }
    return write_report(t);
}

const std::vector<ReportColumn> kTable2Columns = {{"n_strings", ColumnFormat::integer},
                                                  {"twist_zone_mm", ColumnFormat::length},
                                                  {"contraction_mm", ColumnFormat::length},
                                                  {"total_length_mm", ColumnFormat::length},
                                                  {"percent", ColumnFormat::percent}};

std::string table2(const fs::path& dir) {
    const ReportTable ref = load_reference(dir / "table2_contraction.csv", kTable2Columns);
    ReportTable t{{{"n_strings", ColumnFormat::integer},
                   {"twist_zone_mm", ColumnFormat::length},
                   {"contraction_mm", ColumnFormat::length},
                   {"total_length_mm", ColumnFormat::length},
                   {"percent", ColumnFormat::percent},
                   {"published_total_mm", ColumnFormat::length},
                   {"published_percent", ColumnFormat::percent},
                   {"delta_percent", ColumnFormat::rmse}},
                  {}};
    for (const auto& row : ref.rows) {
        const ContractionSummary s = contraction_percent(num(row[2]), num(row[1]));
        t.rows.push_back({num(row[0]), num(row[1]), s.contraction, s.total_length, s.percent, num(row[3]),
                          num(row[4]), s.percent - num(row[4])});
    }
    return write_report(t);
}

std::string table3(const fs::path& dir) {
    const ReportTable contraction = load_reference(dir / "table2_contraction.csv", kTable2Columns);
    const ReportTable ref = load_reference(dir / "table3_overtwist.csv", {{"n_strings", ColumnFormat::integer},
                                                                          {"diameter_mm", ColumnFormat::length},
                                                                          {"contraction_percent", ColumnFormat::percent},
                                                                          {"overtwist_turns", ColumnFormat::integer}});
    ReportTable t{{{"n_strings", ColumnFormat::integer},
                   {"diameter_mm", ColumnFormat::length},
                   {"contraction_percent", ColumnFormat::percent},
                   {"total_length_mm", ColumnFormat::length},
                   {"onset_turns", ColumnFormat::turns},
                   {"published_turns", ColumnFormat::integer},
                   {"delta_turns", ColumnFormat::turns}},
                  {}};
    for (std::size_t i = 0; i < ref.rows.size(); ++i) {
        const auto& row = ref.rows[i];
        const int n = static_cast<int>(num(row[0]));
        const StringSystemConfig cfg = load_config(bundled_config(dir, n));
        KinematicParams p = kinematic_params(cfg);
        p.bundle_radius = num(row[1]) / 2.0;
        const double total = contraction_percent(num(contraction.rows.at(i)[2]), cfg.twist_zone).total_length;
        const double turns = overtwist_onset_turns(p, total, num(row[2]) / 100.0);
        t.rows.push_back({num(row[0]), num(row[1]), num(row[2]), total, turns, num(row[3]), turns - num(row[3])});
    }
    return write_report(t);
}

std::string table5(const fs::path& dir) {
    const ReportTable ref = load_reference(dir / "table5_diameter.csv", {{"n_strings", ColumnFormat::integer},
                                                                         {"measured_mm", ColumnFormat::length},
                                                                         {"std_mm", ColumnFormat::length},
                                                                         {"proposed_error_mm", ColumnFormat::length},
                                                                         {"existing_error_mm", ColumnFormat::length}});
    if (ref.rows.empty() || num(ref.rows.front()[0]) != 1.0) {
        throw DataError("table5_diameter.csv must start with the single-string row");
    }
    const double d = num(ref.rows.front()[1]);
    ReportTable t{{{"n_strings", ColumnFormat::integer},
                   {"measured_mm", ColumnFormat::length},
                   {"packed_mm", ColumnFormat::length},
                   {"packed_error_mm", ColumnFormat::length},
                   {"published_proposed_error_mm", ColumnFormat::length},
                   {"ring_mm", ColumnFormat::length},
                   {"ring_error_mm", ColumnFormat::length},
                   {"published_existing_error_mm", ColumnFormat::length}},
                  {}};
    for (const auto& row : ref.rows) {
        const auto n = static_cast<std::size_t>(num(row[0]));
        const double measured = num(row[1]);
        const double packed = bundle_diameter_packed(pack_bundle(n, d));
        const double ring = bundle_diameter_ring(n, d);
        t.rows.push_back({num(row[0]), measured, packed, diameter_model_error(packed, measured), num(row[3]), ring,
                          diameter_model_error(ring, measured), num(row[4])});
    }
    return write_report(t);
}

std::string table6(const fs::path& dir, const std::optional<fs::path>& svg) {
    const ReportTable ref = load_reference(dir / "table6_rmse.csv", {{"n_strings", ColumnFormat::integer},
                                                                     {"rmse_constant_mm", ColumnFormat::rmse},
                                                                     {"rmse_variable_mm", ColumnFormat::rmse}});
    ReportTable t{{{"n_strings", ColumnFormat::integer},
                   {"rmse_constant_mm", ColumnFormat::rmse},
                   {"rmse_variable_mm", ColumnFormat::rmse},
                   {"winner", ColumnFormat::text},
                   {"published_constant_mm", ColumnFormat::rmse},
                   {"published_variable_mm", ColumnFormat::rmse}},
                  {}};
    std::vector<PlotSeries> plot;
    for (const auto& row : ref.rows) {
        const int n = static_cast<int>(num(row[0]));
        const KinematicParams p = kinematic_params(load_config(bundled_config(dir, n)));
        const MeasurementSeries s = parse_file(bundled_series(dir, n), parse_measurement_csv);
        const ComparisonReport rep = compare_models(p, s);
        t.rows.push_back({num(row[0]), rep.rmse_constant, rep.rmse_variable, std::string(to_string(rep.winner)),
                          num(row[1]), num(row[2])});
        if (svg) {
            PlotSeries measured{std::to_string(n) + " strings (approx. data)", {}, {}};
            PlotSeries model{std::to_string(n) + " strings (constant model)", {}, {}};
            for (const MeasurementSample& m : s.samples) {
                measured.x.push_back(m.turns);
                measured.y.push_back(m.displacement);
                model.x.push_back(m.turns);
                model.y.push_back(predict(p, ModelKind::constant, m));
            }
            plot.push_back(std::move(measured));
            plot.push_back(std::move(model));
        }
    }
    if (svg) {
        write_file(*svg, render_plot(plot, {"turns", "displacement [mm]", "Constant-radius model vs. data"}));
    }
    return write_report(t);
}

std::string lifecycle_tables(const std::vector<LifeCycleRecord>& records) {
    ReportTable t{{{"load_kgf", ColumnFormat::scientific},
                   {"turns_per_cycle", ColumnFormat::integer},
                   {"cycles_endured", ColumnFormat::integer},
                   {"contraction_per_cycle_mm", ColumnFormat::length},
                   {"computed_total_mm", ColumnFormat::length},
                   {"published_total_mm", ColumnFormat::length},
                   {"deviation_mm", ColumnFormat::length},
                   {"consistent", ColumnFormat::text}},
                  {}};
    for (const LifeCycleRecord& rec : records) {
        const RecordCheck c = validate_record(rec);
        t.rows.push_back({newtons_to_kgf(rec.load), rec.turns_per_cycle, static_cast<double>(rec.cycles_endured),
                          rec.contraction_per_cycle, c.computed_total, rec.published_total, c.deviation,
                          std::string(c.consistent ? "yes" : "no")});
    }
    return write_report(t);
}

// Load-life fit reported in kgf so `a` matches the units of the records file.
std::string load_life_tables(const std::vector<LifeCycleRecord>& records) {
    const auto means = mean_total_by_load(records);
    std::vector<double> loads;
    std::vector<double> totals;
    for (const auto& [load, total] : means) {
        loads.push_back(newtons_to_kgf(load));
        totals.push_back(total);
    }
    const LoadLifeFit fit = fit_power_law(loads, totals);
    ReportTable summary{{{"a_kgf", ColumnFormat::scientific},
                         {"b", ColumnFormat::scientific},
                         {"residual_rms", ColumnFormat::scientific}},
                        {{fit.a, fit.b, fit.residual_rms}}};
    ReportTable per_load{{{"load_kgf", ColumnFormat::scientific},
                          {"mean_total_mm", ColumnFormat::length},
                          {"fitted_total_mm", ColumnFormat::length}},
                         {}};
    for (std::size_t i = 0; i < loads.size(); ++i) {
        per_load.rows.push_back({loads[i], totals[i], fit.a * std::pow(loads[i], fit.b)});
    }
    return write_report(summary) + "\n" + write_report(per_load);
}

std::string table7(const fs::path& dir) {
    const auto records = parse_file(dir / "table7_lifecycle.csv", parse_lifecycle_csv);
    return lifecycle_tables(records) + "\n" + load_life_tables(records);
}

// ---------------------------------------------------------------------------
// subcommands

struct Options {
    std::string config;
    std::string data;
    std::string model;
    std::string records;
    std::string log;
    std::string svg;
    std::string data_dir;
    double turns = 0.0;
    double displacement = 0.0;
    double total_length = 0.0;
    double fraction = 0.0;
    double threshold = 0.0;
    std::size_t hold = 1;
    std::vector<double> predict_args;
    std::string load_unit = "kgf";
    int table = 0;
    bool zero_offset = false;
    bool fit = false;
    bool fit_length = false;
};

int cmd_predict(const Options& o, std::ostream& out) {
    require_non_negative(o.turns, "--turns");
    const KinematicParams p = kinematic_params(load_config(o.config));
    const double alpha = turns_to_radians(o.turns);
    const ModelKind kind = o.model == "variable" ? ModelKind::variable : ModelKind::constant;
    double x = 0.0;
    bool converged = true;
    if (kind == ModelKind::constant) {
        x = forward_constant(p, alpha);
    } else {
        const VariableSolution sol = forward_variable(p, alpha);
        x = sol.displacement;
        converged = sol.converged;
    }
    if (o.zero_offset) x -= zero_turn_offset(p);
    ReportTable t{{{"turns", ColumnFormat::turns}, {"model", ColumnFormat::text}, {"displacement_mm", ColumnFormat::length}},
                  {{o.turns, std::string(to_string(kind)), x}}};
    out << write_report(t);
    if (!converged) throw DivergenceError("variable-radius iteration did not converge; last iterate printed");
    return kOk;
}

int cmd_inverse(const Options& o, std::ostream& out) {
    require_non_negative(o.displacement, "--displacement");
    const KinematicParams p = kinematic_params(load_config(o.config));
    const double x = o.zero_offset ? o.displacement + zero_turn_offset(p) : o.displacement;
    const double turns = radians_to_turns(inverse_constant(p, x));
    ReportTable t{{{"displacement_mm", ColumnFormat::length}, {"turns", ColumnFormat::turns}},
                  {{o.displacement, turns}}};
    out << write_report(t);
    return kOk;
}

int cmd_bundle(const Options& o, std::ostream& out) {
    const StringSystemConfig cfg = load_config(o.config);
    const DiameterModel model = o.model == "ring" ? DiameterModel::existing_ring : DiameterModel::proposed_packing;
    const DiameterPrediction pred =
        predict_diameter(model, cfg.n_strings, cfg.string_diameter, cfg.measured_bundle_diameter);

    ReportTable t{{{"model", ColumnFormat::text},
                   {"n_strings", ColumnFormat::integer},
                   {"diameter_mm", ColumnFormat::length},
                   {"measured_mm", ColumnFormat::text},
                   {"error_mm", ColumnFormat::text}},
                  {}};
    const std::string measured = cfg.measured_bundle_diameter
                                     ? format_value(*cfg.measured_bundle_diameter, ColumnFormat::length)
                                     : std::string();
    const std::string error = pred.signed_error_vs_measured
                                  ? format_value(*pred.signed_error_vs_measured, ColumnFormat::length)
                                  : std::string();
    t.rows.push_back({std::string(to_string(model)), static_cast<double>(cfg.n_strings), pred.diameter, measured, error});
    out << write_report(t);

    if (model == DiameterModel::proposed_packing) {
        const BundlePacking packing = pack_bundle(cfg.n_strings, cfg.string_diameter);
        ReportTable c{{{"index", ColumnFormat::integer},
                       {"x_mm", ColumnFormat::scientific},
                       {"y_mm", ColumnFormat::scientific}},
                      {}};
        for (std::size_t i = 0; i < packing.size(); ++i) {
            c.rows.push_back({static_cast<double>(packing.placement_order[i] + 1), packing.centers[i].x,
                              packing.centers[i].y});
        }
        out << "\n" << write_report(c);
    }
    return kOk;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
    const StringSystemConfig cfg = load_config(o.config);
    const MeasurementSeries s = parse_file(o.data, parse_measurement_csv);
    const FitResult fit = o.fit_length
                              ? fit_radius_and_length(s, cfg.separator, 0.5 * cfg.twist_zone, 1.5 * cfg.twist_zone)
                              : fit_bundle_radius(s, cfg.twist_zone, cfg.separator);
    ReportTable t{{{"bundle_radius_mm", ColumnFormat::scientific},
                   {"twist_zone_mm", ColumnFormat::length},
                   {"rmse_mm", ColumnFormat::rmse},
                   {"iterations", ColumnFormat::integer},
                   {"converged", ColumnFormat::text}},
                  {{fit.bundle_radius, fit.twist_zone.value_or(cfg.twist_zone), fit.rmse,
                    static_cast<double>(fit.iterations), std::string(fit.converged ? "yes" : "no")}}};
    out << write_report(t);
    return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
    const KinematicParams p = kinematic_params(load_config(o.config));
    const MeasurementSeries s = parse_file(o.data, parse_measurement_csv);
    const ComparisonReport rep = compare_models(p, s);
    ReportTable summary{{{"rmse_constant_mm", ColumnFormat::rmse},
                         {"rmse_variable_mm", ColumnFormat::rmse},
                         {"winner", ColumnFormat::text}},
                        {{rep.rmse_constant, rep.rmse_variable, std::string(to_string(rep.winner))}}};
    ReportTable res{{{"turns", ColumnFormat::turns},
                     {"measured_mm", ColumnFormat::length},
                     {"residual_constant_mm", ColumnFormat::length},
                     {"residual_variable_mm", ColumnFormat::length}},
                    {}};
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        res.rows.push_back({s.samples[i].turns, s.samples[i].displacement, rep.residuals_constant[i],
                            rep.residuals_variable[i]});
    }
    out << write_report(summary) << "\n" << write_report(res);

    if (!o.svg.empty()) {
        PlotSeries measured{"measured", {}, {}};
        PlotSeries constant{"constant radius", {}, {}};
        PlotSeries variable{"variable radius", {}, {}};
        for (std::size_t i = 0; i < s.samples.size(); ++i) {
            const MeasurementSample& m = s.samples[i];
            measured.x.push_back(m.turns);
            measured.y.push_back(m.displacement);
            constant.x.push_back(m.turns);
            constant.y.push_back(m.displacement + rep.residuals_constant[i]);
            variable.x.push_back(m.turns);
            variable.y.push_back(m.displacement + rep.residuals_variable[i]);
        }
        write_file(o.svg, render_plot({measured, constant, variable}, {"turns", "displacement [mm]", ""}));
    }
    return kOk;
}

int cmd_onset(const Options& o, std::ostream& out) {
    if (!(o.fraction > 0.0 && o.fraction < 1.0)) throw UsageError("--fraction must lie in (0, 1)");
    const KinematicParams p = kinematic_params(load_config(o.config));
    if (!(o.total_length > p.twist_zone)) throw UsageError("--total-length must exceed the twisting zone length");
    const double turns = overtwist_onset_turns(p, o.total_length, o.fraction);
    ReportTable t{{{"total_length_mm", ColumnFormat::length},
                   {"fraction", ColumnFormat::scientific},
                   {"onset_turns", ColumnFormat::turns}},
                  {{o.total_length, o.fraction, turns}}};
    out << write_report(t);
    return kOk;
}

int cmd_lifecycle(const Options& o, std::ostream& out) {
    if (o.records.empty() && o.log.empty()) throw UsageError("lifecycle needs --records and/or --log");
    if ((o.fit || !o.predict_args.empty()) && o.records.empty()) throw UsageError("--fit/--predict need --records");
    bool first = true;
    auto section = [&](const std::string& text) {
        if (!first) out << "\n";
        out << text;
        first = false;
    };

    if (!o.records.empty()) {
        const auto records = parse_file(o.records, parse_lifecycle_csv);
        section(lifecycle_tables(records));
        if (o.fit) section(load_life_tables(records));
        if (!o.predict_args.empty()) {
            const double to_newtons = o.load_unit == "N" ? 1.0 : kNewtonsPerKgf;
            const double load = o.predict_args[0];
            const double per_cycle = o.predict_args[1];
            if (!(load > 0.0) || !(per_cycle > 0.0)) throw UsageError("--predict needs a positive load and contraction");
            const LoadLifeFit fit = fit_load_life(records);
            const auto cycles = predict_endurance(fit, load * to_newtons, per_cycle);
            ReportTable t{{{"load", ColumnFormat::scientific},
                           {"unit", ColumnFormat::text},
                           {"contraction_per_cycle_mm", ColumnFormat::length},
                           {"predicted_cycles", ColumnFormat::integer}},
                          {{load, o.load_unit, per_cycle, static_cast<double>(cycles)}}};
            section(write_report(t));
        }
    }
    if (!o.log.empty()) {
        if (!(o.threshold > 0.0)) throw UsageError("--log needs a positive --threshold (mA)");
        if (o.hold == 0) throw UsageError("--hold must be at least 1");
        const CycleLog log = parse_file(o.log, parse_cycle_log);
        const auto idx = detect_failure(log, o.threshold, o.hold);
        ReportTable t{{{"samples", ColumnFormat::integer},
                       {"failure_index", ColumnFormat::text},
                       {"failure_t_ms", ColumnFormat::text},
                       {"failure_turns", ColumnFormat::text}},
                      {}};
        if (idx) {
            const CycleSample& s = log.samples[*idx];
            t.rows.push_back({static_cast<double>(log.samples.size()), std::to_string(*idx),
                              format_value(s.t_ms, ColumnFormat::scientific), format_value(s.turns, ColumnFormat::turns)});
        } else {
            t.rows.push_back({static_cast<double>(log.samples.size()), std::string("none"), std::string(), std::string()});
        }
        section(write_report(t));
    }
    return kOk;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
    const fs::path dir = o.data_dir.empty() ? default_data_dir() : fs::path(o.data_dir);
    if (!o.svg.empty() && o.table != 6) throw UsageError("--svg is only available for table 6");
    if (o.table == 6) {
        out << table6(dir, o.svg.empty() ? std::nullopt : std::optional<fs::path>(o.svg));
    } else {
        out << reproduce_table(o.table, dir);
    }
    return kOk;
}

}  // namespace

fs::path default_data_dir() { return fs::path(TSA_DEFAULT_DATA_DIR); }

std::string reproduce_table(int table, const fs::path& data_dir) {
    switch (table) {
        case 1: return table1(data_dir);
        case 2: return table2(data_dir);
        case 3: return table3(data_dir);
        case 5: return table5(data_dir);
        case 6: return table6(data_dir, std::nullopt);
        case 7: return table7(data_dir);
        default: throw std::invalid_argument("no reproducible table " + std::to_string(table));
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Twisted string actuator modelling toolkit"};
    app.name("tsa");
    app.require_subcommand(1, 1);
    Options o;

    auto* predict = app.add_subcommand("predict", "Displacement after a number of shaft turns");
    predict->add_option("--config", o.config, "System config file")->required();
    predict->add_option("--turns", o.turns, "Shaft turns")->required();
    predict->add_option("--model", o.model, "constant or variable")
        ->default_val("constant")
        ->check(CLI::IsMember({"constant", "variable"}));
    predict->add_flag("--zero-offset", o.zero_offset, "Report displacement relative to zero turns");

    auto* inverse = app.add_subcommand("inverse", "Shaft turns needed for a displacement");
    inverse->add_option("--config", o.config, "System config file")->required();
    inverse->add_option("--displacement", o.displacement, "Displacement [mm]")->required();
    inverse->add_flag("--zero-offset", o.zero_offset, "Displacement is relative to zero turns");

    auto* bundle = app.add_subcommand("bundle", "Bundle diameter and packing layout");
    bundle->add_option("--config", o.config, "System config file")->required();
    bundle->add_option("--model", o.model, "packed or ring")->default_val("packed")->check(CLI::IsMember({"packed", "ring"}));

    auto* calibrate = app.add_subcommand("calibrate", "Fit the bundle radius to a measurement series");
    calibrate->add_option("--config", o.config, "System config file")->required();
    calibrate->add_option("--data", o.data, "Measurement CSV")->required();
    calibrate->add_flag("--fit-length", o.fit_length, "Also fit the twisting zone length");

    auto* compare = app.add_subcommand("compare", "Constant vs. variable radius RMSE");
    compare->add_option("--config", o.config, "System config file")->required();
    compare->add_option("--data", o.data, "Measurement CSV")->required();
    compare->add_option("--svg", o.svg, "Write a comparison plot");

    auto* onset = app.add_subcommand("onset", "Turns at which overtwist begins");
    onset->add_option("--config", o.config, "System config file")->required();
    onset->add_option("--total-length", o.total_length, "Total effective string length [mm]")->required();
    onset->add_option("--fraction", o.fraction, "Contraction fraction at onset, in (0, 1)")->required();

    auto* lifecycle = app.add_subcommand("lifecycle", "Endurance record analysis");
    lifecycle->add_option("--records", o.records, "Life-cycle records CSV");
    lifecycle->add_flag("--fit", o.fit, "Fit the load-life power law");
    lifecycle->add_option("--predict", o.predict_args, "LOAD PER_CYCLE_MM")->expected(2);
    lifecycle->add_option("--load-unit", o.load_unit, "Unit of the --predict load")
        ->default_val("kgf")
        ->check(CLI::IsMember({"kgf", "N"}));
    lifecycle->add_option("--log", o.log, "Current log CSV for failure detection");
    lifecycle->add_option("--threshold", o.threshold, "Failure current threshold [mA]");
    lifecycle->add_option("--hold", o.hold, "Consecutive samples above threshold")->default_val(1);

    auto* reproduce = app.add_subcommand("reproduce", "Rebuild a published table from bundled data");
    reproduce->add_option("--table", o.table, "Table number")->required()->check(CLI::IsMember({1, 2, 3, 5, 6, 7}));
    reproduce->add_option("--data-dir", o.data_dir, "Bundled data directory");
    reproduce->add_option("--svg", o.svg, "Also write a plot (table 6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (predict->parsed()) return cmd_predict(o, out);
        if (inverse->parsed()) return cmd_inverse(o, out);
        if (bundle->parsed()) return cmd_bundle(o, out);
        if (calibrate->parsed()) return cmd_calibrate(o, out);
        if (compare->parsed()) return cmd_compare(o, out);
        if (onset->parsed()) return cmd_onset(o, out);
        if (lifecycle->parsed()) return cmd_lifecycle(o, out);
        if (reproduce->parsed()) return cmd_reproduce(o, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DivergenceError& e) {
        err << "model divergence: " << e.what() << "\n";
        return kDivergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsage;
}

}  // namespace tsa::cli
