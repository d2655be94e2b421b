#include "tsa/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tsa/errors.hpp"
#include "tsa/units.hpp"

namespace tsa {

namespace {

void require_alpha(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("rotation angle must be finite and non-negative");
    }
}

double helix_leg(const KinematicParams& p, double alpha, double radius) {
    return p.separator / 2.0 + alpha * radius;
}

// sqrt(L^2 + h^2) - L, written without the cancellation at small h.
double displacement_for_radius(const KinematicParams& p, double alpha, double radius) {
    const double h = helix_leg(p, alpha, radius);
    return h * h / (std::hypot(p.twist_zone, h) + p.twist_zone);
}

}  // namespace

const char* to_string(ModelKind kind) {
    return kind == ModelKind::constant ? "constant" : "variable";
}

void validate(const KinematicParams& p) {
    if (!(p.twist_zone > 0.0) || !std::isfinite(p.twist_zone)) {
        throw std::invalid_argument("twisting zone length must be positive");
    }
    if (!(p.separator >= 0.0) || !std::isfinite(p.separator)) {
        throw std::invalid_argument("separator distance must be non-negative");
    }
    if (!(p.bundle_radius > 0.0) || !std::isfinite(p.bundle_radius)) {
        throw std::invalid_argument("bundle radius must be positive");
    }
}

double forward_constant(const KinematicParams& p, double alpha) {
    validate(p);
    require_alpha(alpha);
    return displacement_for_radius(p, alpha, p.bundle_radius);
}

double zero_turn_offset(const KinematicParams& p) { return forward_constant(p, 0.0); }

double inverse_constant(const KinematicParams& p, double x) {
    validate(p);
    const double L = p.twist_zone;
    const double offset = displacement_for_radius(p, 0.0, p.bundle_radius);
    // allow round-off at the boundary so inverse(forward(0)) == 0
    if (!(x >= offset - 1e-12 * std::max(1.0, L))) {
        throw OutOfRangeError("displacement " + std::to_string(x) +
                              " mm is below the zero-turn offset " + std::to_string(offset) + " mm");
    }
    const double leg = std::sqrt(std::max(0.0, x) * (x + 2.0 * L));
    return std::max(0.0, (leg - p.separator / 2.0) / p.bundle_radius);
}

double variable_radius(const KinematicParams& p, double x) {
    return p.bundle_radius * std::sqrt((p.twist_zone + x) / p.twist_zone);
}

VariableSolution forward_variable(const KinematicParams& p, double alpha, std::optional<double> reference_x) {
    validate(p);
    require_alpha(alpha);
    if (reference_x) {
        if (!(*reference_x >= 0.0) || !std::isfinite(*reference_x)) {
            throw std::invalid_argument("reference displacement must be non-negative");
        }
        return {displacement_for_radius(p, alpha, variable_radius(p, *reference_x)), true, 1};
    }

    const double limit = 100.0 * p.twist_zone;
    VariableSolution sol;
    double x = displacement_for_radius(p, alpha, p.bundle_radius);
    for (int it = 1; it <= kVariableMaxIterations; ++it) {
        const double next = displacement_for_radius(p, alpha, variable_radius(p, x));
        sol.iterations = it;
        if (!std::isfinite(next) || next > limit) {
            sol.displacement = next;
            return sol;
        }
        const bool done = std::abs(next - x) <= kVariableTolerance;
        x = next;
        if (done) {
            sol.displacement = x;
            sol.converged = true;
            return sol;
        }
    }
    sol.displacement = x;
    return sol;
}

ContractionSummary contraction_percent(double contraction, double twist_zone) {
    if (!(contraction >= 0.0) || !std::isfinite(contraction)) {
        throw std::invalid_argument("contraction must be non-negative");
    }
    if (!(twist_zone > 0.0) || !std::isfinite(twist_zone)) {
        throw std::invalid_argument("twisting zone length must be positive");
    }
    ContractionSummary s;
    s.contraction = contraction;
    s.total_length = twist_zone + contraction;
    s.percent = 100.0 * contraction / s.total_length;
    return s;
}

double overtwist_onset_turns(const KinematicParams& p, double total_length, double onset_fraction) {
    validate(p);
    if (!(onset_fraction > 0.0 && onset_fraction < 1.0)) {
        throw std::invalid_argument("onset fraction must lie in (0, 1)");
    }
    if (!(total_length > p.twist_zone)) {
        throw std::invalid_argument("total length must exceed the twisting zone length");
    }
    return radians_to_turns(inverse_constant(p, onset_fraction * total_length));
}

KinematicState helix_state(const KinematicParams& p, double alpha) {
    KinematicState s;
    s.alpha = alpha;
    s.displacement = forward_constant(p, alpha);
    s.string_length = p.twist_zone + s.displacement;
    s.helix_angle = std::atan(helix_leg(p, alpha, p.bundle_radius) / p.twist_zone);
    s.effective_radius = p.bundle_radius;
    return s;
}

}  // namespace tsa
