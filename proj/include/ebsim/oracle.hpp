#pragma once

// Semi-analytic expected values. Outcomes factorize over the hidden angle,
// so every joint probability is a 1-D average over lambda of the product of
// the two wings' conditional probabilities. The integrand is only piecewise
// smooth (the detection probability's min{} has kinks), so panels are split
// at the crossover points of both wings before adaptive quadrature.

#include <cstdint>
#include <vector>

#include "ebsim/counts.hpp"
#include "ebsim/model.hpp"
#include "ebsim/quadrature.hpp"

namespace ebsim::oracle {

// P(a | alpha, lambda): U with probability 1 - eta, and the detected branch
// splits o/e as (1 +- cos(2(alpha-lambda)))/2.
inline double conditional_prob_alice(Outcome a, double alpha, double lambda, Threshold threshold) {
    const double eta = detection_probability_alice(alpha, lambda, threshold);
    if (a == Outcome::u) return 1.0 - eta;
    const double cos_term = std::cos(2.0 * (alpha - lambda));
    return a == Outcome::o ? eta * 0.5 * (1.0 + cos_term) : eta * 0.5 * (1.0 - cos_term);
}

// Bob's wing: setting shifted by pi/2 and the o/e labels swapped.
inline double conditional_prob_bob(Outcome b, double beta, double lambda, Threshold threshold) {
    if (b == Outcome::u) return conditional_prob_alice(Outcome::u, beta - kPi / 2.0, lambda, threshold);
    const Outcome flipped = b == Outcome::o ? Outcome::e : Outcome::o;
    return conditional_prob_alice(flipped, beta - kPi / 2.0, lambda, threshold);
}

inline double setting_for_alice(const SettingAngles& s, SettingPair pair) {
    return pair.x == 1 ? s.alpha1 : s.alpha2;
}

inline double setting_for_bob(const SettingAngles& s, SettingPair pair) {
    return pair.y == 1 ? s.beta1 : s.beta2;
}

// (1/2pi) * integral over lambda of P(a|alpha_x, lambda) P(b|beta_y, lambda).
inline double joint_prob(Outcome a, Outcome b, SettingPair pair, const SettingAngles& settings,
                         Threshold threshold, double abs_tol = 1e-9) {
    const double alpha = setting_for_alice(settings, pair);
    const double beta = setting_for_bob(settings, pair);

    std::vector<double> kinks = detection_crossovers(alpha, threshold);
    const auto bob_kinks = detection_crossovers(beta - kPi / 2.0, threshold);
    kinks.insert(kinks.end(), bob_kinks.begin(), bob_kinks.end());

    const auto integrand = [&](double lambda) {
        return conditional_prob_alice(a, alpha, lambda, threshold) *
               conditional_prob_bob(b, beta, lambda, threshold);
    };
    const auto res = quad::integrate(integrand, 0.0, kTwoPi, kinks, abs_tol * kTwoPi);
    return res.value / kTwoPi;
}

enum class JMode { full, deleted_singles };

// Expected Eberhard J for an equal-allocation run of trials_total trials
// (trials_total/4 per setting pair).
inline double expected_j(double theta, Threshold threshold, std::uint64_t trials_total, JMode mode,
                         double abs_tol = 1e-9) {
    const auto settings = settings_from_theta(theta);
    const auto p = [&](Outcome a, Outcome b, SettingPair pair) {
        return joint_prob(a, b, pair, settings, threshold, abs_tol);
    };
    double acc = p(Outcome::o, Outcome::e, {1, 2}) + p(Outcome::e, Outcome::o, {2, 1}) +
                 p(Outcome::o, Outcome::o, {2, 2}) - p(Outcome::o, Outcome::o, {1, 1});
    if (mode == JMode::full) {
        acc += p(Outcome::o, Outcome::u, {1, 2}) + p(Outcome::u, Outcome::o, {2, 1});
    }
    return static_cast<double>(trials_total) / 4.0 * acc;
}

}  // namespace ebsim::oracle
