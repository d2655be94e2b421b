#ifndef TSA_CALIBRATION_HPP
#define TSA_CALIBRATION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tsa/kinematics.hpp"

namespace tsa {

struct MeasurementSample {
    double turns = 0.0;
    double displacement = 0.0;  // mm
};

struct MeasurementSeries {
    std::vector<MeasurementSample> samples;  // strictly increasing turns
    std::optional<std::size_t> n_strings;
    std::optional<double> load;  // N
    std::string source;
};

struct FitResult {
    double bundle_radius = 0.0;               // r_hat, mm
    std::optional<double> twist_zone;         // L_hat, mm (joint fit only)
    double rmse = 0.0;                        // mm
    int iterations = 0;
    bool converged = false;
};

struct ComparisonReport {
    double rmse_constant = 0.0;
    double rmse_variable = 0.0;
    ModelKind winner = ModelKind::constant;
    std::vector<double> residuals_constant;  // model - measured, per sample
    std::vector<double> residuals_variable;
};

/// Throws std::invalid_argument on non-increasing turns or negative
/// displacement; IllPosedError when fewer than `min_samples` are present.
void validate(const MeasurementSeries& s, std::size_t min_samples = 1);

/// Model prediction at one sample. The variable model takes the measured
/// displacement as its radius reference.
double predict(const KinematicParams& p, ModelKind model, const MeasurementSample& sample);

/// Per-sample residuals, model - measured, in series order.
std::vector<double> residuals(const KinematicParams& p, ModelKind model, const MeasurementSeries& s);

/// Root-mean-square residual; summation order is the series order.
double rmse(const KinematicParams& p, ModelKind model, const MeasurementSeries& s);

struct ScalarMinimum {
    double argument = 0.0;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free bounded minimisation on [lo, hi]: a coarse log-spaced scan
/// picks the bracket, then golden-section search narrows it to `tolerance`.
/// The result is never worse than either endpoint.
ScalarMinimum minimize_bounded(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance, int max_iterations = 200);

inline constexpr double kRadiusLowerBound = 1e-4;  // mm
inline constexpr double kRadiusUpperBound = 10.0;  // mm
inline constexpr double kFitTolerance = 1e-6;      // mm
inline constexpr int kJointFitMaxOuter = 50;

/// Least-RMSE bundle radius for the constant model with L and S held fixed.
/// Throws IllPosedError for fewer than two samples or identical turn values.
FitResult fit_bundle_radius(const MeasurementSeries& s, double twist_zone, double separator);

/// Joint (r, L) fit by coordinate descent, L searched within
/// [twist_zone_lo, twist_zone_hi].
FitResult fit_radius_and_length(const MeasurementSeries& s, double separator, double twist_zone_lo,
                                double twist_zone_hi);

/// Both models against one series. Ties go to the constant model.
/// Throws IllPosedError for fewer than two samples.
ComparisonReport compare_models(const KinematicParams& p, const MeasurementSeries& s);

}  // namespace tsa

#endif  // TSA_CALIBRATION_HPP
