#pragma once

// Threshold local-hidden-variable model for a two-wing Bell experiment.
//
// Each trial shares a hidden angle lambda. A wing with analyzer setting s
// (Alice: alpha; Bob: beta, phase-shifted by pi/2) generates a voltage
//
//     v = r * sin^4(2(s - lambda)) / 2 - 1,      r uniform in [0, 1),
//
// and the photon counts as detected when v lies strictly below the threshold
// V. Detected outcomes are decided by sign(1 + cos(2(s - lambda)) - 2u) with
// a fresh uniform u; Alice labels +1 -> o, -1 -> e, Bob the reverse.
// Undetected photons are labelled u. Detection therefore happens with
// probability min{1, 2(V+1)/sin^4(2(s - lambda))}, which depends on the
// local setting only: the mechanism is setting-dependent efficiency and
// nothing else.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ebsim/quadrature.hpp"

namespace ebsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Outcome : int { o = 0, e = 1, u = 2 };

// Detection threshold voltage. The model is meaningful for V in [-1, 0]
// (below -1 nothing is ever detected, above 0 everything is); construction
// enforces that range unless explicitly overridden.
class Threshold {
public:
    explicit Threshold(double v, bool allow_out_of_range = false) : v_(v) {
        if (!std::isfinite(v)) throw std::invalid_argument("Threshold: value must be finite");
        if (!allow_out_of_range && (v < -1.0 || v > 0.0)) {
            throw std::invalid_argument("Threshold: value must lie in [-1, 0]"
                                        " (pass allow_out_of_range to override)");
        }
    }

    double value() const { return v_; }

private:
    double v_;
};

// The four analyzer angles of one sweep point, radians.
struct SettingAngles {
    double alpha1;
    double alpha2;
    double beta1;
    double beta2;
};

// The five uniforms consumed by one trial.
struct TrialDraw {
    double lambda;    // hidden angle, [0, 2pi)
    double r;         // Alice voltage draw, [0, 1)
    double r_prime;   // Bob voltage draw
    double r_dprime;  // Alice outcome draw
    double r_tprime;  // Bob outcome draw
};

// alpha1 = theta + 3pi/8, alpha2 = theta + pi/8, beta1 = pi/8, beta2 = 3pi/8.
inline SettingAngles settings_from_theta(double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("settings_from_theta: theta must be finite");
    }
    return {theta + 3.0 * kPi / 8.0, theta + kPi / 8.0, kPi / 8.0, 3.0 * kPi / 8.0};
}

inline double voltage_alice(double alpha, double lambda, double r) {
    const double s = std::sin(2.0 * (alpha - lambda));
    const double s2 = s * s;
    return r * (s2 * s2) / 2.0 - 1.0;
}

// Bob's wing is Alice's with the setting shifted by pi/2.
inline double voltage_bob(double beta, double lambda, double r_prime) {
    return voltage_alice(beta - kPi / 2.0, lambda, r_prime);
}

inline bool detect(double v, Threshold threshold) { return v < threshold.value(); }

// Shared sign argument of the outcome rule; >= 0 maps to +1 (the measure-zero
// tie at zero is assigned to +1 so the rule is total).
inline double outcome_sign_argument(double setting, double lambda, double u) {
    return 1.0 + std::cos(2.0 * (setting - lambda)) - 2.0 * u;
}

inline Outcome outcome_alice(double alpha, double lambda, double r_dprime, bool detected) {
    if (!detected) return Outcome::u;
    return outcome_sign_argument(alpha, lambda, r_dprime) >= 0.0 ? Outcome::o : Outcome::e;
}

inline Outcome outcome_bob(double beta, double lambda, double r_tprime, bool detected) {
    if (!detected) return Outcome::u;
    return outcome_sign_argument(beta - kPi / 2.0, lambda, r_tprime) >= 0.0 ? Outcome::e
                                                                            : Outcome::o;
}

// P(detected) = min{1, 2(V+1)/sin^4(2(alpha-lambda))}. When the sine
// vanishes the voltage is exactly -1, so detection is certain for V > -1 and
// impossible otherwise; no division happens in that case.
inline double detection_probability_alice(double alpha, double lambda, Threshold threshold) {
    const double c = 2.0 * (threshold.value() + 1.0);
    if (c <= 0.0) return 0.0;
    const double s = std::sin(2.0 * (alpha - lambda));
    const double s2 = s * s;
    const double s4 = s2 * s2;
    if (s4 <= c) return 1.0;
    return c / s4;
}

inline double detection_probability_bob(double beta, double lambda, Threshold threshold) {
    return detection_probability_alice(beta - kPi / 2.0, lambda, threshold);
}

// Lambda values in [0, 2pi) where sin^4(2(setting-lambda)) crosses 2(V+1),
// i.e. where the detection probability switches between 1 and the rational
// branch. Integrands built from it have kinks exactly there. Empty when the
// min{} never switches (V = 0 or V <= -1 territory).
inline std::vector<double> detection_crossovers(double setting, Threshold threshold) {
    const double c = 2.0 * (threshold.value() + 1.0);
    if (c <= 0.0 || c >= 1.0) return {};
    const double half_angle = 0.5 * std::asin(std::pow(c, 0.25));
    const double half_pi = kPi / 2.0;
    std::vector<double> out;
    out.reserve(8);
    for (double base : {setting - half_angle, setting + half_angle}) {
        const double first = base - std::floor(base / half_pi) * half_pi;
        for (int k = 0; k < 4; ++k) out.push_back(first + k * half_pi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Setting-averaged detection probability (1/2pi) * integral of
// min{1, 2(V+1)/sin^4(2u)} du over one period, by adaptive quadrature split
// at the crossover kinks. Absolute accuracy well below 1e-6.
inline double average_efficiency(Threshold threshold) {
    const double c = 2.0 * (threshold.value() + 1.0);
    if (c <= 0.0) return 0.0;
    if (c >= 1.0) return 1.0;
    const auto kinks = detection_crossovers(0.0, threshold);
    const auto integrand = [threshold](double u) {
        return detection_probability_alice(0.0, u, threshold);
    };
    const auto res = quad::integrate(integrand, 0.0, kTwoPi, kinks, 1e-8);
    return res.value / kTwoPi;
}

}  // namespace ebsim
