#ifndef TSA_LIFECYCLE_HPP
#define TSA_LIFECYCLE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tsa {

/// One endurance run: strings cycled between zero and `turns_per_cycle`
/// under a constant load until they broke. Only the contracting half of each
/// cycle is counted in the contraction figures.
struct LifeCycleRecord {
    double load = 0.0;                   // N
    double turns_per_cycle = 0.0;
    std::uint64_t cycles_endured = 0;
    double contraction_per_cycle = 0.0;  // mm
    double published_total = 0.0;       // mm, as reported alongside the run
};

struct RecordCheck {
    double computed_total = 0.0;   // cycles * per-cycle, mm
    double deviation = 0.0;        // published - computed, mm
    bool consistent = true;
};

/// Power law C = a * F^b relating load to the total contraction endured.
/// `a` is in the units of whatever loads were fitted.
struct LoadLifeFit {
    double a = 0.0;
    double b = 0.0;
    double residual_rms = 0.0;  // RMS of ln-space residuals
};

struct CycleSample {
    double t_ms = 0.0;
    double turns = 0.0;
    double current_ma = 0.0;
};

struct CycleLog {
    std::vector<CycleSample> samples;
    std::optional<std::size_t> failure_index;
};

inline constexpr double kRecordTolerance = 1.0;  // mm

void validate(const LifeCycleRecord& rec);

double total_contraction(const LifeCycleRecord& rec);

/// Flags a record whose published total differs from cycles * per-cycle by
/// more than kRecordTolerance.
RecordCheck validate_record(const LifeCycleRecord& rec);

/// Ordinary least squares of ln C against ln F over (load, total) points.
/// Needs at least two distinct loads.
LoadLifeFit fit_power_law(std::span<const double> loads, std::span<const double> totals);

/// Averages published totals per distinct load, then fits the power law in
/// newtons. Throws IllPosedError with fewer than two distinct loads.
LoadLifeFit fit_load_life(std::span<const LifeCycleRecord> records);

/// Distinct loads in ascending order with their mean published total.
std::vector<std::pair<double, double>> mean_total_by_load(std::span<const LifeCycleRecord> records);

/// floor(a F^b / per_cycle_contraction); `load` in the fit's units.
std::uint64_t predict_endurance(const LoadLifeFit& fit, double load, double per_cycle_contraction);

/// First index starting a run of `hold` samples at or above `threshold_ma`.
std::optional<std::size_t> detect_failure(const CycleLog& log, double threshold_ma, std::size_t hold);

}  // namespace tsa

#endif  // TSA_LIFECYCLE_HPP
