#pragma once

// Seed-driven trial runner. Every trial's randomness is addressed by
// (seed, theta_index, trial_index) through the counter-based stream, so a
// sweep is a pure function of its configuration: thread count, evaluation
// order and chunking cannot change the result. Note that theta_index is the
// position in theta_list; the index, not the theta value, keys the stream.

#include <algorithm>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ebsim/counts.hpp"
#include "ebsim/model.hpp"
#include "ebsim/rng.hpp"

namespace ebsim {

enum class Allocation {
    equal_per_pair,  // trials_total/4 per pair, in blocks ordered (1,1),(1,2),(2,1),(2,2)
    random_pair,     // pair chosen uniformly per trial from the trial's own stream
};

struct RunConfig {
    std::vector<double> theta_list;  // radians
    Threshold threshold{0.0};
    std::uint64_t trials_total = 400000;  // per theta point
    std::uint64_t seed = 1;
    Allocation allocation = Allocation::equal_per_pair;
    unsigned num_workers = 0;  // 0 = hardware concurrency
};

struct SweepResult {
    double theta = 0.0;  // radians
    CountTable table;
    std::int64_t j_full = 0;
    std::int64_t j_deleted = 0;
    double empirical_efficiency = 0.0;
};

// The five model uniforms of one trial, with lambda scaled to [0, 2pi). All
// five are always materialized, in fixed order, so detected/undetected
// branches cannot desynchronize anything.
inline TrialDraw derive_draw(std::uint64_t seed, std::uint32_t theta_index,
                             std::uint64_t trial_index) {
    const auto u = rng::trial_uniforms(seed, theta_index, trial_index);
    return {kTwoPi * u[0], u[1], u[2], u[3], u[4]};
}

// The dedicated extra uniform used for pair selection under random allocation.
inline double pair_selector(std::uint64_t seed, std::uint32_t theta_index,
                            std::uint64_t trial_index) {
    return rng::trial_uniforms(seed, theta_index, trial_index)[5];
}

inline std::pair<Outcome, Outcome> run_trial(const SettingAngles& settings, SettingPair pair,
                                             Threshold threshold, const TrialDraw& draw) {
    const double alpha = pair.x == 1 ? settings.alpha1 : settings.alpha2;
    const double beta = pair.y == 1 ? settings.beta1 : settings.beta2;
    const bool alice_detected = detect(voltage_alice(alpha, draw.lambda, draw.r), threshold);
    const bool bob_detected = detect(voltage_bob(beta, draw.lambda, draw.r_prime), threshold);
    return {outcome_alice(alpha, draw.lambda, draw.r_dprime, alice_detected),
            outcome_bob(beta, draw.lambda, draw.r_tprime, bob_detected)};
}

struct PointConfig {
    Threshold threshold{0.0};
    std::uint64_t trials_total = 400000;
    std::uint64_t seed = 1;
    std::uint32_t theta_index = 0;
    Allocation allocation = Allocation::equal_per_pair;
    unsigned num_workers = 0;
};

namespace detail {

inline void validate_point_config(const PointConfig& config) {
    if (config.trials_total == 0) {
        throw std::invalid_argument("run_point: trials_total must be positive");
    }
    if (config.allocation == Allocation::equal_per_pair && config.trials_total % 4 != 0) {
        throw std::invalid_argument(
            "run_point: trials_total must be divisible by 4 under equal allocation");
    }
}

inline CountTable run_trial_range(const SettingAngles& settings, const PointConfig& config,
                                  std::uint64_t first, std::uint64_t last) {
    CountTable table;
    const std::uint64_t per_pair = config.trials_total / 4;
    for (std::uint64_t t = first; t < last; ++t) {
        SettingPair pair;
        if (config.allocation == Allocation::equal_per_pair) {
            pair = kPairOrder[t / per_pair];
        } else {
            const double u = pair_selector(config.seed, config.theta_index, t);
            pair = kPairOrder[static_cast<int>(u * 4.0)];
        }
        const auto draw = derive_draw(config.seed, config.theta_index, t);
        const auto [a, b] = run_trial(settings, pair, config.threshold, draw);
        table.record(pair, a, b);
    }
    return table;
}

}  // namespace detail

inline SweepResult run_point(const SettingAngles& settings, double theta,
                             const PointConfig& config) {
    detail::validate_point_config(config);

    unsigned workers = config.num_workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers > config.trials_total) workers = static_cast<unsigned>(config.trials_total);

    CountTable table;
    if (workers <= 1) {
        table = detail::run_trial_range(settings, config, 0, config.trials_total);
    } else {
        std::vector<std::future<CountTable>> parts;
        parts.reserve(workers);
        const std::uint64_t chunk = (config.trials_total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t first = static_cast<std::uint64_t>(w) * chunk;
            const std::uint64_t last = std::min(first + chunk, config.trials_total);
            if (first >= last) break;
            parts.push_back(std::async(std::launch::async, [&, first, last] {
                return detail::run_trial_range(settings, config, first, last);
            }));
        }
        for (auto& part : parts) table += part.get();
    }

    SweepResult result;
    result.theta = theta;
    result.table = table;
    result.j_full = eberhard_j(table);
    result.j_deleted = deleted_singles_j(table);
    result.empirical_efficiency = single_wing_efficiency(table);
    return result;
}

inline std::vector<SweepResult> sweep(const RunConfig& config) {
    if (config.theta_list.empty()) {
        throw std::invalid_argument("sweep: theta_list must not be empty");
    }
    PointConfig point{config.threshold, config.trials_total, config.seed, 0, config.allocation,
                      config.num_workers};
    std::vector<SweepResult> results;
    results.reserve(config.theta_list.size());
    for (std::size_t i = 0; i < config.theta_list.size(); ++i) {
        point.theta_index = static_cast<std::uint32_t>(i);
        try {
            results.push_back(run_point(settings_from_theta(config.theta_list[i]),
                                        config.theta_list[i], point));
        } catch (const std::exception& err) {
            throw std::runtime_error("sweep: point " + std::to_string(i) + " (theta = " +
                                     std::to_string(config.theta_list[i]) + " rad): " + err.what());
        }
    }
    return results;
}

}  // namespace ebsim
