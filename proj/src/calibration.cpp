#include "tsa/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tsa/errors.hpp"
#include "tsa/units.hpp"

namespace tsa {

namespace {

constexpr int kScanPoints = 65;

void require_fit_data(const MeasurementSeries& s) {
    if (s.samples.size() < 2) throw IllPosedError("at least two samples are required");
    const double first = s.samples.front().turns;
    const bool all_equal = std::all_of(s.samples.begin(), s.samples.end(),
                                       [first](const MeasurementSample& m) { return m.turns == first; });
    if (all_equal) throw IllPosedError("all samples share the same number of turns");
    validate(s);
}

double scan_point(double lo, double hi, int i) {
    const double t = static_cast<double>(i) / (kScanPoints - 1);
    if (i == 0) return lo;
    if (i == kScanPoints - 1) return hi;
    if (lo > 0.0) return lo * std::pow(hi / lo, t);
    return lo + (hi - lo) * t;
}

}  // namespace

void validate(const MeasurementSeries& s, std::size_t min_samples) {
    if (s.samples.empty()) throw std::invalid_argument("measurement series is empty");
    if (s.samples.size() < min_samples) {
        throw IllPosedError("measurement series needs at least " + std::to_string(min_samples) + " samples");
    }
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        const MeasurementSample& m = s.samples[i];
        if (!std::isfinite(m.turns) || !std::isfinite(m.displacement)) {
            throw std::invalid_argument("non-finite sample at index " + std::to_string(i));
        }
        if (m.turns < 0.0) throw std::invalid_argument("negative turns at index " + std::to_string(i));
        if (m.displacement < 0.0) {
            throw std::invalid_argument("negative displacement at index " + std::to_string(i));
        }
        if (i > 0 && !(m.turns > s.samples[i - 1].turns)) {
            throw std::invalid_argument("turns must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
}

double predict(const KinematicParams& p, ModelKind model, const MeasurementSample& sample) {
    const double alpha = turns_to_radians(sample.turns);
    if (model == ModelKind::constant) return forward_constant(p, alpha);
    return forward_variable(p, alpha, sample.displacement).displacement;
}

std::vector<double> residuals(const KinematicParams& p, ModelKind model, const MeasurementSeries& s) {
    validate(s);
    std::vector<double> out;
    out.reserve(s.samples.size());
    for (const MeasurementSample& m : s.samples) out.push_back(predict(p, model, m) - m.displacement);
    return out;
}

double rmse(const KinematicParams& p, ModelKind model, const MeasurementSeries& s) {
    const std::vector<double> res = residuals(p, model, s);
    double sum = 0.0;
    for (double e : res) sum += e * e;
    return std::sqrt(sum / static_cast<double>(res.size()));
}

ScalarMinimum minimize_bounded(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance, int max_iterations) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("minimize_bounded: need a finite interval lo < hi");
    }
    if (!(tolerance > 0.0)) throw std::invalid_argument("minimize_bounded: tolerance must be positive");

    ScalarMinimum best;
    best.value = std::numeric_limits<double>::infinity();
    auto consider = [&best](double x, double v) {
        if (v < best.value) {
            best.value = v;
            best.argument = x;
        }
    };

    std::vector<double> xs(kScanPoints);
    std::vector<double> vs(kScanPoints);
    int best_index = 0;
    for (int i = 0; i < kScanPoints; ++i) {
        xs[i] = scan_point(lo, hi, i);
        vs[i] = f(xs[i]);
        if (vs[i] < vs[best_index]) best_index = i;
        consider(xs[i], vs[i]);
    }
    int evaluations = kScanPoints;

    double a = xs[std::max(0, best_index - 1)];
    double b = xs[std::min(kScanPoints - 1, best_index + 1)];
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    evaluations += 2;
    consider(c, fc);
    consider(d, fd);

    int it = 0;
    while (b - a > tolerance && it < max_iterations) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
            consider(d, fd);
        }
        ++evaluations;
        ++it;
    }
    const double mid = (a + b) / 2.0;
    consider(mid, f(mid));
    ++evaluations;

    best.evaluations = evaluations;
    best.converged = b - a <= tolerance;
    return best;
}

FitResult fit_bundle_radius(const MeasurementSeries& s, double twist_zone, double separator) {
    require_fit_data(s);
    validate(KinematicParams{twist_zone, separator, 1.0});
    auto objective = [&](double r) { return rmse({twist_zone, separator, r}, ModelKind::constant, s); };
    const ScalarMinimum m = minimize_bounded(objective, kRadiusLowerBound, kRadiusUpperBound, kFitTolerance);
    FitResult out;
    out.bundle_radius = m.argument;
    out.rmse = m.value;
    out.iterations = m.evaluations;
    out.converged = m.converged;
    return out;
}

FitResult fit_radius_and_length(const MeasurementSeries& s, double separator, double twist_zone_lo,
                                double twist_zone_hi) {
    require_fit_data(s);
    if (!(twist_zone_lo > 0.0) || !(twist_zone_hi > twist_zone_lo)) {
        throw std::invalid_argument("twisting zone bounds must satisfy 0 < lo < hi");
    }
    double L = (twist_zone_lo + twist_zone_hi) / 2.0;
    double r = fit_bundle_radius(s, L, separator).bundle_radius;

    FitResult out;
    for (int outer = 1; outer <= kJointFitMaxOuter; ++outer) {
        const ScalarMinimum lm = minimize_bounded(
            [&](double length) { return rmse({length, separator, r}, ModelKind::constant, s); },
            twist_zone_lo, twist_zone_hi, kFitTolerance);
        const FitResult rf = fit_bundle_radius(s, lm.argument, separator);
        const double step = std::max(std::abs(lm.argument - L), std::abs(rf.bundle_radius - r));
        L = lm.argument;
        r = rf.bundle_radius;
        out.iterations = outer;
        out.rmse = rf.rmse;
        if (step <= kFitTolerance) {
            out.converged = true;
            break;
        }
    }
    out.bundle_radius = r;
    out.twist_zone = L;
    return out;
}

ComparisonReport compare_models(const KinematicParams& p, const MeasurementSeries& s) {
    validate(s, 2);
    validate(p);
    ComparisonReport rep;
    rep.residuals_constant = residuals(p, ModelKind::constant, s);
    rep.residuals_variable = residuals(p, ModelKind::variable, s);
    auto root_mean_square = [](const std::vector<double>& v) {
        double sum = 0.0;
        for (double e : v) sum += e * e;
        return std::sqrt(sum / static_cast<double>(v.size()));
    };
    rep.rmse_constant = root_mean_square(rep.residuals_constant);
    rep.rmse_variable = root_mean_square(rep.residuals_variable);
    rep.winner = rep.rmse_variable < rep.rmse_constant ? ModelKind::variable : ModelKind::constant;
    return rep;
}

}  // namespace tsa
