#pragma once

// Outcome bookkeeping: 9 outcome cells per setting pair, 4 setting pairs,
// plus the Eberhard functional
//
//   J = n_oe(a1,b2) + n_ou(a1,b2) + n_eo(a2,b1) + n_uo(a2,b1)
//       + n_oo(a2,b2) - n_oo(a1,b1)
//
// on raw counts, and the variant with the two singles terms deleted.

#include <array>
#include <cstdint>
#include <stdexcept>

#include "ebsim/model.hpp"

namespace ebsim {

struct SettingPair {
    int x = 1;  // Alice setting index, 1 or 2
    int y = 1;  // Bob setting index, 1 or 2

    int index() const { return (x - 1) * 2 + (y - 1); }
    bool operator==(const SettingPair&) const = default;
};

// Fixed pair ordering used for block allocation and serialization.
inline constexpr std::array<SettingPair, 4> kPairOrder = {{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};

inline int outcome_cell(Outcome a, Outcome b) {
    return static_cast<int>(a) * 3 + static_cast<int>(b);
}

// Value type; merge per-worker tables with +=. Invariant: for every pair the
// 9 cells sum to trials[pair].
struct CountTable {
    std::array<std::array<std::uint64_t, 9>, 4> cells{};
    std::array<std::uint64_t, 4> trials{};

    void record(SettingPair pair, Outcome a, Outcome b) {
        if (pair.x < 1 || pair.x > 2 || pair.y < 1 || pair.y > 2) {
            throw std::invalid_argument("CountTable::record: setting indices must be 1 or 2");
        }
        auto& cell = cells[pair.index()][outcome_cell(a, b)];
        if (cell == UINT64_MAX || trials[pair.index()] == UINT64_MAX) {
            throw std::overflow_error("CountTable::record: counter overflow");
        }
        ++cell;
        ++trials[pair.index()];
    }

    std::uint64_t count(SettingPair pair, Outcome a, Outcome b) const {
        return cells[pair.index()][outcome_cell(a, b)];
    }

    std::uint64_t trials_for(SettingPair pair) const { return trials[pair.index()]; }

    std::uint64_t total_trials() const {
        std::uint64_t n = 0;
        for (auto t : trials) n += t;
        return n;
    }

    CountTable& operator+=(const CountTable& other) {
        for (int p = 0; p < 4; ++p) {
            for (int c = 0; c < 9; ++c) cells[p][c] += other.cells[p][c];
            trials[p] += other.trials[p];
        }
        return *this;
    }

    friend CountTable operator+(CountTable lhs, const CountTable& rhs) { return lhs += rhs; }

    bool operator==(const CountTable&) const = default;
};

inline std::int64_t eberhard_j(const CountTable& t) {
    const auto n = [&](SettingPair p, Outcome a, Outcome b) {
        return static_cast<std::int64_t>(t.count(p, a, b));
    };
    return n({1, 2}, Outcome::o, Outcome::e) + n({1, 2}, Outcome::o, Outcome::u) +
           n({2, 1}, Outcome::e, Outcome::o) + n({2, 1}, Outcome::u, Outcome::o) +
           n({2, 2}, Outcome::o, Outcome::o) - n({1, 1}, Outcome::o, Outcome::o);
}

// Eberhard functional with the singles terms n_ou(a1,b2) and n_uo(a2,b1)
// replaced by zero. Deleting them changes the tested inequality into one
// that is open to the detection loophole.
inline std::int64_t deleted_singles_j(const CountTable& t) {
    const auto n = [&](SettingPair p, Outcome a, Outcome b) {
        return static_cast<std::int64_t>(t.count(p, a, b));
    };
    return n({1, 2}, Outcome::o, Outcome::e) + n({2, 1}, Outcome::e, Outcome::o) +
           n({2, 2}, Outcome::o, Outcome::o) - n({1, 1}, Outcome::o, Outcome::o);
}

namespace detail {
inline double frequency_term(const CountTable& t, SettingPair p, Outcome a, Outcome b) {
    const auto n = t.trials_for(p);
    return n == 0 ? 0.0 : static_cast<double>(t.count(p, a, b)) / static_cast<double>(n);
}
}  // namespace detail

// Per-pair-frequency variants of J, for runs with unequal trials per pair.
// The raw-count functionals above assume equal allocation.
inline double normalized_eberhard_j(const CountTable& t) {
    return detail::frequency_term(t, {1, 2}, Outcome::o, Outcome::e) +
           detail::frequency_term(t, {1, 2}, Outcome::o, Outcome::u) +
           detail::frequency_term(t, {2, 1}, Outcome::e, Outcome::o) +
           detail::frequency_term(t, {2, 1}, Outcome::u, Outcome::o) +
           detail::frequency_term(t, {2, 2}, Outcome::o, Outcome::o) -
           detail::frequency_term(t, {1, 1}, Outcome::o, Outcome::o);
}

inline double normalized_deleted_singles_j(const CountTable& t) {
    return detail::frequency_term(t, {1, 2}, Outcome::o, Outcome::e) +
           detail::frequency_term(t, {2, 1}, Outcome::e, Outcome::o) +
           detail::frequency_term(t, {2, 2}, Outcome::o, Outcome::o) -
           detail::frequency_term(t, {1, 1}, Outcome::o, Outcome::o);
}

// Detected single-wing events over single-wing opportunities, both wings
// pooled: the empirical counterpart of the average detection efficiency.
inline double single_wing_efficiency(const CountTable& t) {
    std::uint64_t detected = 0;
    for (const auto pair : kPairOrder) {
        for (Outcome det : {Outcome::o, Outcome::e}) {
            for (Outcome other : {Outcome::o, Outcome::e, Outcome::u}) {
                detected += t.count(pair, det, other);  // Alice detected
                detected += t.count(pair, other, det);  // Bob detected
            }
        }
    }
    const std::uint64_t opportunities = 2 * t.total_trials();
    return opportunities == 0 ? 0.0 : static_cast<double>(detected) / static_cast<double>(opportunities);
}

}  // namespace ebsim
