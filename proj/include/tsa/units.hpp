#ifndef TSA_UNITS_HPP
#define TSA_UNITS_HPP

#include <numbers>

namespace tsa {

// All angles are radians inside the library; turns only appear at I/O edges.
inline constexpr double kRadiansPerTurn = 2.0 * std::numbers::pi;

// Standard gravity, used for kgf <-> N.
inline constexpr double kNewtonsPerKgf = 9.80665;

constexpr double turns_to_radians(double turns) { return turns * kRadiansPerTurn; }
constexpr double radians_to_turns(double radians) { return radians / kRadiansPerTurn; }

constexpr double kgf_to_newtons(double kgf) { return kgf * kNewtonsPerKgf; }
constexpr double newtons_to_kgf(double newtons) { return newtons / kNewtonsPerKgf; }

}  // namespace tsa

#endif  // TSA_UNITS_HPP
