#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tsa/errors.hpp"
#include "tsa/kinematics.hpp"
#include "tsa/units.hpp"

using namespace tsa;

namespace {

// Bundled builds (data/n*.cfg), r = measured bundle diameter / 2.
const KinematicParams kN2{23.20, 5.0, 0.235};
const KinematicParams kN6{22.85, 5.0, 0.43};
const KinematicParams kN8{23.30, 5.0, 0.495};

// Expected values below were evaluated with 30-digit arithmetic (mpmath)
// directly from x = sqrt(L^2 + (S/2 + alpha r)^2) - L.

}  // namespace

TEST_CASE("forward_constant examples") {
    CHECK(forward_constant({23.20, 0.0, 0.235}, 0.0) == 0.0);
    CHECK(forward_constant(kN6, turns_to_radians(10)) == doctest::Approx(14.4785001789374076).epsilon(1e-13));
    CHECK(forward_constant(kN2, turns_to_radians(20)) == doctest::Approx(16.3502604239084121).epsilon(1e-13));
    CHECK(zero_turn_offset(kN6) == doctest::Approx(0.136354647921013924).epsilon(1e-12));
}

TEST_CASE("forward_constant rejects negative rotation and bad params") {
    CHECK_THROWS_AS(forward_constant(kN6, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(forward_constant({0.0, 5.0, 0.4}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(forward_constant({20.0, -1.0, 0.4}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(forward_constant({20.0, 5.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("inverse_constant examples") {
    const double alpha = 62.8319;
    CHECK(inverse_constant(kN6, forward_constant(kN6, alpha)) == doctest::Approx(alpha).epsilon(1e-12));
    CHECK(radians_to_turns(inverse_constant(kN6, 14.48)) == doctest::Approx(10.0).epsilon(1e-4));
    CHECK(inverse_constant(kN2, zero_turn_offset(kN2)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(inverse_constant(kN2, zero_turn_offset(kN2) - 0.01), OutOfRangeError);
    CHECK_THROWS_AS(inverse_constant(kN2, -1.0), OutOfRangeError);
}

TEST_CASE("inverse(forward(alpha)) round trip over random parameters") {
    std::mt19937_64 rng(20140601);
    std::uniform_real_distribution<double> L(5.0, 100.0), S(0.0, 10.0), r(0.05, 2.0), a(0.0, 500.0);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const KinematicParams p{L(rng), S(rng), r(rng)};
        const double alpha = a(rng);
        worst = std::max(worst, std::abs(inverse_constant(p, forward_constant(p, alpha)) - alpha));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("forward_constant is strictly increasing in alpha, r and S") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> L(5.0, 100.0), S(0.0, 10.0), r(0.05, 2.0), a(0.0, 500.0), step(1e-3, 1.0);
    for (int i = 0; i < 500; ++i) {
        const KinematicParams p{L(rng), S(rng), r(rng)};
        const double alpha = a(rng);
        const double h = step(rng);
        const double x = forward_constant(p, alpha);
        CHECK(forward_constant(p, alpha + h) > x);
        CHECK(forward_constant({p.twist_zone, p.separator, p.bundle_radius + h}, alpha) >= x);
        CHECK(forward_constant({p.twist_zone, p.separator + h, p.bundle_radius}, alpha) > x);
        if (alpha > 0.0) CHECK(forward_constant({p.twist_zone, p.separator, p.bundle_radius + h}, alpha) > x);
    }
}

TEST_CASE("variable model: neutral point and fixed point") {
    const VariableSolution at_zero = forward_variable(kN6, 0.0);
    CHECK(at_zero.converged);
    CHECK(at_zero.displacement == doctest::Approx(zero_turn_offset(kN6)).epsilon(1e-9));

    // fixed point iterated to convergence with 30-digit arithmetic
    const VariableSolution sol = forward_variable(kN2, turns_to_radians(20));
    CHECK(sol.converged);
    CHECK(sol.iterations <= kVariableMaxIterations);
    CHECK(sol.displacement == doctest::Approx(29.0511013946101866).epsilon(1e-6));
    CHECK(sol.displacement > forward_constant(kN2, turns_to_radians(20)));

    // self-consistency of the returned point
    const double r = variable_radius(kN2, sol.displacement);
    CHECK(std::hypot(kN2.twist_zone, kN2.separator / 2 + turns_to_radians(20) * r) - kN2.twist_zone ==
          doctest::Approx(sol.displacement).epsilon(1e-6));
}

TEST_CASE("variable model with a reference displacement") {
    const VariableSolution sol = forward_variable(kN6, turns_to_radians(40), 95.0);
    CHECK(sol.converged);
    CHECK(sol.displacement == doctest::Approx(226.132064572772670).epsilon(1e-12));
    CHECK_THROWS_AS(forward_variable(kN6, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("variable model flags divergence") {
    // huge radius: the first iterate already leaves the 100 L window
    const VariableSolution sol = forward_variable({10.0, 0.0, 50.0}, turns_to_radians(100));
    CHECK_FALSE(sol.converged);
}

TEST_CASE("variable model never predicts less than the constant model") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> L(5.0, 100.0), S(0.0, 10.0), r(0.05, 1.0), a(0.0, 100.0), ref(0.0, 200.0);
    for (int i = 0; i < 300; ++i) {
        const KinematicParams p{L(rng), S(rng), r(rng)};
        const double alpha = a(rng);
        const double c = forward_constant(p, alpha);
        const VariableSolution fp = forward_variable(p, alpha);
        if (fp.converged) CHECK(fp.displacement >= c - 1e-9);
        const double ref_x = ref(rng);
        const double v = forward_variable(p, alpha, ref_x).displacement;
        CHECK(v >= c);
        if (alpha > 0.0 && ref_x > 0.0) CHECK(v > c);
    }
}

TEST_CASE("contraction_percent") {
    const ContractionSummary n6 = contraction_percent(95.67, 22.85);
    CHECK(n6.total_length == doctest::Approx(118.52));
    CHECK(n6.percent == doctest::Approx(80.72).epsilon(1e-4));
    CHECK(std::lround(n6.percent) == 81);

    const ContractionSummary n2 = contraction_percent(58.40, 23.20);
    CHECK(n2.total_length == doctest::Approx(81.60));
    CHECK(std::lround(n2.percent) == 72);

    CHECK(contraction_percent(0.0, 10.0).percent == 0.0);
    CHECK_THROWS_AS(contraction_percent(-1.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(contraction_percent(1.0, 0.0), std::invalid_argument);

    double prev = -1.0;
    for (double c = 0.0; c < 1e6; c = c * 1.7 + 0.5) {
        const double pct = contraction_percent(c, 23.0).percent;
        CHECK(pct < 100.0);
        CHECK(pct > prev);
        prev = pct;
    }
}

TEST_CASE("overtwist onset examples") {
    CHECK(overtwist_onset_turns(kN6, 118.52, 0.10) == doctest::Approx(8.74136869880114145).epsilon(1e-12));
    CHECK(overtwist_onset_turns(kN2, 81.60, 0.19) == doctest::Approx(19.2882160230535799).epsilon(1e-12));
    CHECK(overtwist_onset_turns(kN8, 107.39, 0.10) == doctest::Approx(7.17469931382155719).epsilon(1e-12));
    CHECK_THROWS_AS(overtwist_onset_turns(kN6, 118.52, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(overtwist_onset_turns(kN6, 20.0, 0.1), std::invalid_argument);
    // onset below the zero-turn offset
    CHECK_THROWS_AS(overtwist_onset_turns({22.85, 5.0, 0.43}, 23.0, 0.001), OutOfRangeError);
}

TEST_CASE("helix_state") {
    const KinematicState zero = helix_state({30.0, 0.0, 0.3}, 0.0);
    CHECK(zero.string_length == 30.0);
    CHECK(zero.helix_angle == 0.0);

    const KinematicState s = helix_state(kN6, turns_to_radians(10));
    CHECK(s.string_length == doctest::Approx(22.85 + 14.4785001789374076).epsilon(1e-13));
    CHECK(s.helix_angle == doctest::Approx(0.912041350687860448).epsilon(1e-13));
    CHECK(s.effective_radius == kN6.bundle_radius);
    CHECK(s.helix_angle < std::numbers::pi / 2);
}

TEST_CASE("string length minus L equals the displacement") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> L(5.0, 100.0), S(0.0, 10.0), r(0.05, 2.0), a(0.0, 500.0);
    for (int i = 0; i < 500; ++i) {
        const KinematicParams p{L(rng), S(rng), r(rng)};
        const KinematicState s = helix_state(p, a(rng));
        // X is stored as L + x, so X - L recovers x up to the rounding of that sum
        CHECK(std::abs((s.string_length - p.twist_zone) - s.displacement) <=
              2.0 * std::numeric_limits<double>::epsilon() * s.string_length);
        CHECK(s.string_length >= p.twist_zone);
    }
}

TEST_CASE("turn/radian conversion round trip") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> t(0.0, 1e4);
    for (int i = 0; i < 1000; ++i) {
        const double turns = t(rng);
        CHECK(std::abs(radians_to_turns(turns_to_radians(turns)) - turns) <= 1e-12 * std::max(1.0, turns));
    }
    CHECK(turns_to_radians(1.0) == doctest::Approx(2.0 * std::numbers::pi));
}
