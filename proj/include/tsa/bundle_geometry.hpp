#ifndef TSA_BUNDLE_GEOMETRY_HPP
#define TSA_BUNDLE_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace tsa {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double norm(Point2 p);
double distance(Point2 a, Point2 b);

/// Cross-section of a twisted bundle: equal circles, one per string.
///
/// The origin is the midpoint of the core pair. Circles 1 and 2 form the core
/// at (+-circle_radius, 0); every later pair wraps around the existing bundle
/// as close to the origin as the non-overlap constraint allows, with the second
/// string of a pair antipodal to the first. A single string (n = 1) sits at the
/// origin.
struct BundlePacking {
    double circle_radius = 0.0;       // mm, half of one string diameter
    std::vector<Point2> centers;      // mm, in placement order
    std::vector<std::size_t> placement_order;

    std::size_t size() const { return centers.size(); }
};

enum class DiameterModel { proposed_packing, existing_ring };

struct DiameterPrediction {
    DiameterModel model = DiameterModel::proposed_packing;
    std::size_t n_strings = 0;
    double diameter = 0.0;  // mm
    std::optional<double> signed_error_vs_measured;  // model - measured, mm
};

/// Greedy pair-core packing of n circles of diameter d (mm).
/// Throws std::invalid_argument for n == 0 or d <= 0.
BundlePacking pack_bundle(std::size_t n, double d);

/// Diameter of the origin-centred circle enclosing every string.
double bundle_diameter_packed(const BundlePacking& packing);

/// Single-ring model: all strings on one ring around an empty centre,
/// d * (1 + 1/sin(pi/n)) for n >= 2 and d for n == 1.
double bundle_diameter_ring(std::size_t n, double d);

/// Signed model error, predicted - measured.
double diameter_model_error(double predicted, double measured);

/// Convenience wrapper that runs either model and attaches the error when a
/// measured diameter is known.
DiameterPrediction predict_diameter(DiameterModel model, std::size_t n, double d,
                                    std::optional<double> measured = std::nullopt);

const char* to_string(DiameterModel model);

}  // namespace tsa

#endif  // TSA_BUNDLE_GEOMETRY_HPP
