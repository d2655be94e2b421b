#include "tsa/bundle_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tsa {

namespace {

constexpr double kContactTol = 1e-9;   // mm
constexpr double kTieTol = 1e-12;      // relative, on origin distance

double polar_angle(Point2 p) {
    double a = std::atan2(p.y, p.x);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    // -0 and round-off just below the positive x axis count as angle 0
    if (a > 2.0 * std::numbers::pi - 1e-12) a = 0.0;
    return a;
}

// Points at distance `reach` from both a and b.
void append_shell_intersections(Point2 a, Point2 b, double reach, std::vector<Point2>& out) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double sep = std::hypot(dx, dy);
    if (sep <= 0.0 || sep > 2.0 * reach + kContactTol) return;
    const double half = sep / 2.0;
    const double h = std::sqrt(std::max(0.0, reach * reach - half * half));
    const Point2 mid{a.x + dx / 2.0, a.y + dy / 2.0};
    const double ux = -dy / sep;
    const double uy = dx / sep;
    out.push_back({mid.x + h * ux, mid.y + h * uy});
    if (h > 0.0) out.push_back({mid.x - h * ux, mid.y - h * uy});
}

// Candidate centres touching at least one placed circle. The closest feasible
// point to the origin lies either where two contact shells cross or at the
// inward radial point of a single shell; the outward radial point is kept as
// a fallback so the set is never empty.
std::vector<Point2> tangent_candidates(const std::vector<Point2>& placed, double reach) {
    std::vector<Point2> out;
    for (std::size_t i = 0; i < placed.size(); ++i) {
        const Point2 c = placed[i];
        const double r = norm(c);
        if (r > 0.0) {
            out.push_back({c.x * (1.0 + reach / r), c.y * (1.0 + reach / r)});
            out.push_back({c.x * (1.0 - reach / r), c.y * (1.0 - reach / r)});
        } else {
            out.push_back({reach, 0.0});
        }
        for (std::size_t j = i + 1; j < placed.size(); ++j) {
            append_shell_intersections(c, placed[j], reach, out);
        }
    }
    return out;
}

bool is_free(Point2 p, const std::vector<Point2>& placed, double reach) {
    for (const Point2& c : placed) {
        if (distance(p, c) < reach - kContactTol) return false;
    }
    return true;
}

Point2 closest_free_point(const std::vector<Point2>& placed, double reach, bool paired) {
    double best_dist = std::numeric_limits<double>::infinity();
    double best_angle = 0.0;
    Point2 best{};
    for (const Point2& p : tangent_candidates(placed, reach)) {
        if (!is_free(p, placed, reach)) continue;
        const double dist = norm(p);
        // the antipodal partner must not overlap this circle either
        if (paired && 2.0 * dist < reach - kContactTol) continue;
        const double angle = polar_angle(p);
        const bool first = !std::isfinite(best_dist);
        const double tie = first ? 0.0 : kTieTol * std::max(1.0, best_dist);
        if (first || dist < best_dist - tie || (std::abs(dist - best_dist) <= tie && angle < best_angle)) {
            best_dist = dist;
            best_angle = angle;
            best = p;
        }
    }
    if (!std::isfinite(best_dist)) {
        throw std::logic_error("pack_bundle: no free tangent position");
    }
    return best;
}

void validate(std::size_t n, double d) {
    if (n == 0) throw std::invalid_argument("string count must be at least 1");
    if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("string diameter must be positive");
}

}  // namespace

double norm(Point2 p) { return std::hypot(p.x, p.y); }

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

BundlePacking pack_bundle(std::size_t n, double d) {
    validate(n, d);
    BundlePacking packing;
    const double rho = d / 2.0;
    packing.circle_radius = rho;

    auto place = [&packing](Point2 p) {
        packing.placement_order.push_back(packing.centers.size());
        packing.centers.push_back(p);
    };

    if (n == 1) {
        place({0.0, 0.0});
        return packing;
    }

    place({rho, 0.0});
    place({-rho, 0.0});

    while (packing.size() < n) {
        const bool paired = n - packing.size() >= 2;
        const Point2 p = closest_free_point(packing.centers, d, paired);
        place(p);
        if (paired) place({-p.x, -p.y});
    }
    return packing;
}

double bundle_diameter_packed(const BundlePacking& packing) {
    if (packing.centers.empty()) throw std::invalid_argument("empty packing");
    double reach = 0.0;
    for (const Point2& c : packing.centers) reach = std::max(reach, norm(c));
    return 2.0 * (reach + packing.circle_radius);
}

double bundle_diameter_ring(std::size_t n, double d) {
    validate(n, d);
    if (n == 1) return d;
    return d * (1.0 + 1.0 / std::sin(std::numbers::pi / static_cast<double>(n)));
}

double diameter_model_error(double predicted, double measured) {
    if (!(predicted > 0.0) || !(measured > 0.0)) {
        throw std::invalid_argument("diameters must be positive");
    }
    return predicted - measured;
}

DiameterPrediction predict_diameter(DiameterModel model, std::size_t n, double d,
                                    std::optional<double> measured) {
    DiameterPrediction out;
    out.model = model;
    out.n_strings = n;
    out.diameter = model == DiameterModel::proposed_packing ? bundle_diameter_packed(pack_bundle(n, d))
                                                            : bundle_diameter_ring(n, d);
    if (measured) out.signed_error_vs_measured = diameter_model_error(out.diameter, *measured);
    return out;
}

const char* to_string(DiameterModel model) {
    switch (model) {
        case DiameterModel::proposed_packing: return "packed";
        case DiameterModel::existing_ring: return "ring";
    }
    return "unknown";
}

}  // namespace tsa
