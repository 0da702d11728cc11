#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>

#include "ebsim/counts.hpp"

using namespace ebsim;

namespace {

CountTable random_table(std::mt19937_64& gen, std::uint64_t max_cell = 1000) {
    std::uniform_int_distribution<std::uint64_t> dist(0, max_cell);
    CountTable t;
    for (int p = 0; p < 4; ++p) {
        std::uint64_t sum = 0;
        for (int c = 0; c < 9; ++c) {
            t.cells[p][c] = dist(gen);
            sum += t.cells[p][c];
        }
        t.trials[p] = sum;
    }
    return t;
}

}  // namespace

TEST_CASE("record increments one cell and the pair total") {
    CountTable t;
    t.record({1, 1}, Outcome::o, Outcome::o);
    CHECK(t.count({1, 1}, Outcome::o, Outcome::o) == 1);
    CHECK(t.trials_for({1, 1}) == 1);
    CHECK(t.total_trials() == 1);

    for (int i = 0; i < 4; ++i) t.record({1, 2}, Outcome::o, Outcome::u);
    t.record({1, 2}, Outcome::o, Outcome::u);
    CHECK(t.count({1, 2}, Outcome::o, Outcome::u) == 5);

    const CountTable before = t;
    t.record({2, 1}, Outcome::u, Outcome::u);
    CHECK(t.count({2, 1}, Outcome::u, Outcome::u) == before.count({2, 1}, Outcome::u, Outcome::u) + 1);
    for (const auto pair : kPairOrder) {
        for (Outcome a : {Outcome::o, Outcome::e, Outcome::u}) {
            for (Outcome b : {Outcome::o, Outcome::e, Outcome::u}) {
                if (pair == SettingPair{2, 1} && a == Outcome::u && b == Outcome::u) continue;
                CHECK(t.count(pair, a, b) == before.count(pair, a, b));
            }
        }
    }

    CHECK_THROWS_AS(t.record({0, 1}, Outcome::o, Outcome::o), std::invalid_argument);
    CHECK_THROWS_AS(t.record({1, 3}, Outcome::o, Outcome::o), std::invalid_argument);
}

TEST_CASE("record reports counter overflow") {
    CountTable t;
    t.cells[0][0] = UINT64_MAX;
    t.trials[0] = UINT64_MAX;
    CHECK_THROWS_AS(t.record({1, 1}, Outcome::o, Outcome::o), std::overflow_error);
}

TEST_CASE("conservation after repeated records", "[property]") {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> outcome(0, 2);
    CountTable t;
    std::array<std::uint64_t, 4> recorded{};
    for (int i = 0; i < 20000; ++i) {
        const auto pair = kPairOrder[pick(gen)];
        t.record(pair, static_cast<Outcome>(outcome(gen)), static_cast<Outcome>(outcome(gen)));
        ++recorded[pair.index()];
    }
    for (const auto pair : kPairOrder) {
        std::uint64_t sum = 0;
        for (int c = 0; c < 9; ++c) sum += t.cells[pair.index()][c];
        CHECK(sum == t.trials_for(pair));
        CHECK(sum == recorded[pair.index()]);
    }
}

TEST_CASE("eberhard_j on worked examples") {
    CountTable t;
    CHECK(eberhard_j(t) == 0);
    CHECK(deleted_singles_j(t) == 0);

    t.cells[SettingPair{1, 2}.index()][outcome_cell(Outcome::o, Outcome::e)] = 5;
    t.cells[SettingPair{1, 2}.index()][outcome_cell(Outcome::o, Outcome::u)] = 3;
    t.cells[SettingPair{2, 1}.index()][outcome_cell(Outcome::e, Outcome::o)] = 2;
    t.cells[SettingPair{2, 1}.index()][outcome_cell(Outcome::u, Outcome::o)] = 1;
    t.cells[SettingPair{2, 2}.index()][outcome_cell(Outcome::o, Outcome::o)] = 10;
    t.cells[SettingPair{1, 1}.index()][outcome_cell(Outcome::o, Outcome::o)] = 4;
    CHECK(eberhard_j(t) == 17);         // 5 + 3 + 2 + 1 + 10 - 4
    CHECK(deleted_singles_j(t) == 13);  // drops 3 + 1

    CountTable negative;
    negative.cells[SettingPair{1, 1}.index()][outcome_cell(Outcome::o, Outcome::o)] = 7;
    CHECK(eberhard_j(negative) == -7);
}

TEST_CASE("deleted singles equals full when the singles vanish") {
    std::mt19937_64 gen(6);
    CountTable t = random_table(gen);
    t.cells[SettingPair{1, 2}.index()][outcome_cell(Outcome::o, Outcome::u)] = 0;
    t.cells[SettingPair{2, 1}.index()][outcome_cell(Outcome::u, Outcome::o)] = 0;
    CHECK(deleted_singles_j(t) == eberhard_j(t));
}

TEST_CASE("deleted_singles_j never exceeds eberhard_j", "[property]") {
    std::mt19937_64 gen(7);
    for (int i = 0; i < 1000; ++i) {
        const CountTable t = random_table(gen);
        CHECK(deleted_singles_j(t) <= eberhard_j(t));
    }
}

TEST_CASE("eberhard_j is linear under table addition", "[property]") {
    std::mt19937_64 gen(8);
    for (int i = 0; i < 200; ++i) {
        const CountTable a = random_table(gen);
        const CountTable b = random_table(gen);
        CHECK(eberhard_j(a + b) == eberhard_j(a) + eberhard_j(b));
        CHECK(deleted_singles_j(a + b) == deleted_singles_j(a) + deleted_singles_j(b));
    }
}

TEST_CASE("normalized variants divide by per-pair trials") {
    CountTable t;
    // unequal allocation: pair (1,2) has 10 trials, the others 20
    for (int i = 0; i < 4; ++i) t.record({1, 2}, Outcome::o, Outcome::e);
    for (int i = 0; i < 6; ++i) t.record({1, 2}, Outcome::u, Outcome::u);
    for (int i = 0; i < 5; ++i) t.record({2, 1}, Outcome::e, Outcome::o);
    for (int i = 0; i < 15; ++i) t.record({2, 1}, Outcome::u, Outcome::u);
    for (int i = 0; i < 8; ++i) t.record({2, 2}, Outcome::o, Outcome::o);
    for (int i = 0; i < 12; ++i) t.record({2, 2}, Outcome::e, Outcome::e);
    for (int i = 0; i < 20; ++i) t.record({1, 1}, Outcome::o, Outcome::o);

    const double expected = 4.0 / 10.0 + 5.0 / 20.0 + 8.0 / 20.0 - 20.0 / 20.0;
    CHECK(normalized_eberhard_j(t) == Catch::Approx(expected).margin(1e-15));
    CHECK(normalized_deleted_singles_j(t) == Catch::Approx(expected).margin(1e-15));

    CHECK(normalized_eberhard_j(CountTable{}) == 0.0);
}

TEST_CASE("single wing efficiency pools both wings") {
    CountTable t;
    t.record({1, 1}, Outcome::o, Outcome::u);  // Alice detected, Bob not
    t.record({1, 1}, Outcome::u, Outcome::e);  // Bob detected, Alice not
    t.record({2, 2}, Outcome::o, Outcome::o);  // both detected
    t.record({2, 2}, Outcome::u, Outcome::u);  // neither
    CHECK(single_wing_efficiency(t) == Catch::Approx(4.0 / 8.0));
    CHECK(single_wing_efficiency(CountTable{}) == 0.0);
}
