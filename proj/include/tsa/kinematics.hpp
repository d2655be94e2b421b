#ifndef TSA_KINEMATICS_HPP
#define TSA_KINEMATICS_HPP

#include <optional>

namespace tsa {

// Displacement model of a twisted string actuator with a separator.
//
// The strings leave the separator holes S apart and twist over a zone of
// length L into a helix of radius r. After a shaft rotation alpha the string
// inside the zone has length X = sqrt(L^2 + (S/2 + alpha r)^2), and the load
// moves by x = X - L. Angles are radians; lengths are millimetres.

struct KinematicParams {
    double twist_zone = 0.0;     // L, mm
    double separator = 0.0;      // S, mm
    double bundle_radius = 0.0;  // r (r0 for the variable model), mm
};

struct KinematicState {
    double alpha = 0.0;          // rad
    double displacement = 0.0;   // x, mm
    double string_length = 0.0;  // X = L + x, mm
    double helix_angle = 0.0;    // beta, rad
    double effective_radius = 0.0;
};

struct ContractionSummary {
    double contraction = 0.0;    // mm
    double total_length = 0.0;   // L + contraction, mm
    double percent = 0.0;
};

struct VariableSolution {
    double displacement = 0.0;
    bool converged = false;
    int iterations = 0;
};

enum class ModelKind { constant, variable };

const char* to_string(ModelKind kind);

/// Throws std::invalid_argument unless L > 0, S >= 0 and r > 0.
void validate(const KinematicParams& p);

double forward_constant(const KinematicParams& p, double alpha);

/// Displacement at alpha = 0; nonzero whenever S > 0.
double zero_turn_offset(const KinematicParams& p);

/// Closed-form inverse of forward_constant. Throws OutOfRangeError when x is
/// below the zero-turn offset.
double inverse_constant(const KinematicParams& p, double x);

/// Variable-radius model, r = r0 sqrt((L + x)/L).
///
/// With `reference_x` the radius is evaluated once at that displacement (for
/// comparing against a measured point). Without it the self-consistent
/// displacement is found by fixed-point iteration starting from the constant
/// model; `converged` is false when the iterates leave [0, 100 L] or the
/// iteration budget runs out, and the last iterate is returned.
VariableSolution forward_variable(const KinematicParams& p, double alpha,
                                  std::optional<double> reference_x = std::nullopt);

inline constexpr double kVariableTolerance = 1e-6;  // mm
inline constexpr int kVariableMaxIterations = 200;

/// Radius of the variable model at displacement x.
double variable_radius(const KinematicParams& p, double x);

ContractionSummary contraction_percent(double contraction, double twist_zone);

/// Turns at which the displacement reaches onset_fraction * total_length.
double overtwist_onset_turns(const KinematicParams& p, double total_length, double onset_fraction);

KinematicState helix_state(const KinematicParams& p, double alpha);

}  // namespace tsa

#endif  // TSA_KINEMATICS_HPP
