#pragma once

// Counter-based random stream (Philox-4x32, 10 rounds).
//
// Every trial owns an independent stream addressed by (seed, theta_index,
// trial_index); the n-th uniform of a trial is a pure function of that key,
// so serial and parallel runs produce identical draws. The counter block is
// laid out as {trial_lo, trial_hi, theta_index, block} with the 64-bit seed
// as the key. Each 128-bit output block yields two 53-bit uniforms.

#include <array>
#include <cstdint>

namespace ebsim::rng {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

// Maps a 64-bit word to [0, 1) with 53 random bits.
inline double to_unit_interval(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// The six uniforms of one trial's stream, in draw order. Slots 0-4 feed the
// model draw (lambda, r, r', r'', r'''); slot 5 is reserved for setting-pair
// selection under random allocation.
inline std::array<double, 6> trial_uniforms(std::uint64_t seed, std::uint32_t theta_index,
                                            std::uint64_t trial_index) {
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                              static_cast<std::uint32_t>(seed >> 32)};
    std::array<double, 6> u;
    for (std::uint32_t block = 0; block < 3; ++block) {
        const auto out = philox4x32({static_cast<std::uint32_t>(trial_index),
                                     static_cast<std::uint32_t>(trial_index >> 32), theta_index,
                                     block},
                                    key);
        u[2 * block] = to_unit_interval(out[0], out[1]);
        u[2 * block + 1] = to_unit_interval(out[2], out[3]);
    }
    return u;
}

}  // namespace ebsim::rng
