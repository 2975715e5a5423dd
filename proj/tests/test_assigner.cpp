#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support.hpp"
#include "wta/assigner.hpp"
#include "wta/oracle.hpp"
#include "wta/reduction.hpp"

using namespace wta;
using wta::testing::ms;

namespace {

bool is_perfect_matching(const PartialAssignment& m, const std::vector<WorkerId>& workers,
                         const std::vector<TaskId>& tasks) {
    if (m.size() != workers.size()) return false;
    std::vector<WorkerId> mw;
    std::vector<TaskId> mt;
    for (const auto& p : m) {
        mw.push_back(p.worker);
        mt.push_back(p.task);
    }
    std::sort(mw.begin(), mw.end());
    std::sort(mt.begin(), mt.end());
    return mw == workers && mt == tasks;
}

}  // namespace

TEST_SUITE("assigner") {
    TEST_CASE("schedule arithmetic") {
        auto one = RoundSchedule::build(1, 5, 4, 1);
        CHECK(one.outer_rounds() == 1);
        CHECK(one.round(0).bins == 1);

        auto s = RoundSchedule::build(16, 4, 4, 1);
        CHECK(s.outer_rounds() == 30);
        CHECK(s.repetitions() == 24);
        CHECK(s.total_rounds() == 720);

        auto big = RoundSchedule::build(64, 256, 4, 1);
        CHECK(big.outer_rounds() == 44);
        CHECK(big.repetitions() == 56);
        CHECK(big.total_rounds() == 2464);
    }

    TEST_CASE("outer round count is the smallest L with 1.1^L >= w") {
        for (std::uint32_t w = 1; w <= 300; ++w) {
            const auto L = outer_round_count(w);
            CHECK(std::pow(1.1L, L) >= w);
            if (L > 1) CHECK(std::pow(1.1L, L - 1) < w);
        }
    }

    TEST_CASE("bins are non-increasing and end at one") {
        for (std::uint32_t w : {1u, 2u, 3u, 8u, 17u, 64u, 100u}) {
            auto s = RoundSchedule::build(w, 7, 2, 3);
            for (std::size_t i = 1; i < s.total_rounds(); ++i) CHECK(s.round(i).bins <= s.round(i - 1).bins);
            CHECK(s.round(s.total_rounds() - 1).bins == 1);
            for (std::size_t i = 0; i < s.total_rounds(); ++i) {
                const auto r = s.round(i);
                CHECK(r.bins == std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(
                                                             w / std::pow(1.1L, static_cast<long double>(r.outer))))));
            }
        }
    }

    TEST_CASE("same inputs give the same schedule") {
        auto a = RoundSchedule::build(8, 8, 4, 42);
        auto b = RoundSchedule::build(8, 8, 4, 42);
        REQUIRE(a.total_rounds() == b.total_rounds());
        for (std::size_t i = 0; i < a.total_rounds(); ++i) {
            for (WorkerId x = 1; x <= 8; ++x) CHECK(a.stages()[i].worker_bin(x) == b.stages()[i].worker_bin(x));
            for (TaskId x = 1; x <= 64; ++x) CHECK(a.stages()[i].task_bin(x) == b.stages()[i].task_bin(x));
        }
    }

    TEST_CASE("set assignment edge cases") {
        auto s = RoundSchedule::build(4, 4, 4, 1);
        auto empty = assign_set(s, {}, {});
        CHECK(empty.matching.empty());
        CHECK(empty.fallback_pairs == 0);

        std::vector<WorkerId> w{3};
        std::vector<TaskId> t{11};
        auto single = assign_set(s, w, t);
        CHECK(single.matching == PartialAssignment{{3, 11}});
        CHECK(single.fallback_pairs == 0);

        std::vector<WorkerId> two{1, 2};
        CHECK_THROWS_AS(assign_set(s, two, t), std::invalid_argument);
        std::vector<WorkerId> outside{5};
        CHECK_THROWS(assign_set(s, outside, t));
    }

    TEST_CASE("multiset assignment examples") {
        auto s = RoundSchedule::build(3, 9, 4, 1);
        auto r = assign(s, ms(9, {5, 5, 5}));
        CHECK(r.assignment == Assignment(3, {5, 5, 5}));

        auto partial = assign(s, ms(9, {2, 7}));
        CHECK(partial.assignment.assigned() == 2);
        CHECK_FALSE(partial.assignment.task_of(3).has_value());
        CHECK(partial.assignment.realizes(ms(9, {2, 7})));

        CHECK_THROWS(assign(s, ms(9, {1, 2, 3, 4})));
    }

    TEST_CASE("results realize the input and count their rounds") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 300; ++trial) {
            const std::uint32_t w = 1 + rng() % 12;
            const TaskId t = 1 + rng() % 12;
            auto s = RoundSchedule::build(w, t, 4, rng());
            auto tasks = random_multiset(t, rng() % (w + 1), rng);
            auto r = assign(s, tasks);
            CHECK(r.assignment.realizes(tasks));
            const auto matched = std::accumulate(r.per_round_matches.begin(), r.per_round_matches.end(), std::size_t{0});
            CHECK(matched + r.fallback_pairs == tasks.size());
        }
    }

    TEST_CASE("call order does not matter") {
        auto s = RoundSchedule::build(6, 5, 4, 9);
        std::mt19937_64 rng(42);
        std::vector<TaskMultiset> inputs;
        for (int i = 0; i < 40; ++i) inputs.push_back(random_multiset(5, rng() % 7, rng));
        std::vector<Assignment> forward;
        for (const auto& in : inputs) forward.push_back(assign(s, in).assignment);
        for (std::size_t i = inputs.size(); i-- > 0;) CHECK(assign(s, inputs[i]).assignment == forward[i]);
    }

    TEST_CASE("fallback-free adjacent pairs stay within 4R") {
        std::mt19937_64 rng(43);
        for (auto [w, t] : {std::pair<std::uint32_t, TaskId>{4, 4}, {8, 8}, {12, 30}}) {
            auto s = RoundSchedule::build(w, t, 4, rng());
            auto current = random_multiset(t, w, rng);
            auto current_r = assign(s, current);
            for (int step = 0; step < 1000; ++step) {
                auto next = adjacent_step(current, rng, StepOptions{step >= 500, w});
                auto next_r = assign(s, next);
                const auto cost = wta::testing::naive_switching(current_r.assignment, next_r.assignment);
                if (current_r.fallback_pairs == 0 && next_r.fallback_pairs == 0) {
                    REQUIRE(cost <= 4 * s.total_rounds());
                }
                for (auto [round, diff] : round_switches(s, current, next)) {
                    CHECK(round < s.total_rounds());
                    CHECK(diff <= 4);
                }
                current = next;
                current_r = next_r;
            }
        }
    }

    TEST_CASE("fallback completes a residual in rank order") {
        std::vector<BinHash> none;
        auto r = complete_with_fallback(none, WorkerTaskInput::make({2, 1}, {9, 4}));
        CHECK(r.matching == PartialAssignment{{1, 4}, {2, 9}});
        CHECK(r.fallback_pairs == 2);
    }

    TEST_CASE("explicit variant rejects bad configurations") {
        auto levels = random_explicit_levels(4, 16, 1);
        CHECK(levels.size() == explicit_level_count(4));
        std::vector<WorkerId> w{1};
        std::vector<TaskId> t{1};
        CHECK_THROWS(assign_explicit_set(std::span(levels).subspan(1), 1, 4, 16, w, t));
        auto small = std::make_shared<const DisperserFamily>(8, 1, 1, 0, 0.25, std::vector<std::uint32_t>(8, 1));
        std::vector<std::shared_ptr<const DisperserFamily>> tiny{small, small};
        CHECK_THROWS(assign_explicit_set(tiny, 1, 4, 16, w, t));
        CHECK_THROWS(DisperserFamily(4, 1, 2, 0, 0.0, {1, 2, 3, 1}));
    }

    TEST_CASE("level count and domain rounding") {
        CHECK(explicit_level_count(1) == 1);
        CHECK(explicit_level_count(2) == 1);
        CHECK(explicit_level_count(8) == 3);
        CHECK(explicit_level_count(9) == 4);
        CHECK(power_of_two_domain(16) == 16);
        CHECK(power_of_two_domain(17) == 32);
        auto levels = random_explicit_levels(8, 24, 3);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            CHECK(levels[i]->domain() == 32);
            CHECK(levels[i]->seeds() == 5);
            CHECK(levels[i]->bins() == (1u << (levels.size() - 1 - i)));
        }
    }

    TEST_CASE("explicit variant with verified families matches every small input") {
        SearchBudget budget;
        budget.time_limit = std::chrono::duration<double>(60.0);
        auto top = disperser_search(16, 2, 4, 3, 0.25, budget, 5);
        REQUIRE(top.has_value());
        // 8 seeds, 2 bins: element e gets the codeword of the affine function
        // with coefficients e - 1 over F2^3; distinct codewords agree on at
        // most 4 of 8 positions, so any pair covers >= 12 of 16 (bin, seed) pairs
        std::vector<std::uint32_t> table;
        for (std::uint32_t e = 0; e < 16; ++e) {
            for (std::uint32_t p = 0; p < 8; ++p) {
                const std::uint32_t bit = (e & 1) ^ ((e >> 1) & p & 1) ^ ((e >> 2) & (p >> 1) & 1) ^ ((e >> 3) & (p >> 2) & 1);
                table.push_back(bit + 1);
            }
        }
        auto mid = std::make_optional<DisperserFamily>(16, 8, 2, 1, 0.25, table);
        REQUIRE(verify_disperser(*top));
        REQUIRE(verify_disperser(*mid));
        auto last = std::make_shared<const DisperserFamily>(16, 1, 1, 0, 0.25, std::vector<std::uint32_t>(16, 1));
        std::vector<std::shared_ptr<const DisperserFamily>> levels{
            std::make_shared<const DisperserFamily>(*top), std::make_shared<const DisperserFamily>(*mid), last};

        const std::uint32_t w = 8;
        const TaskId n = 16;
        const std::uint32_t reps = 8;
        std::size_t inputs = 0;
        std::size_t failures = 0;
        for (std::size_t m = 0; m <= w; ++m) {
            wta::testing::for_each_subset<WorkerId>(w, m, [&](const std::vector<WorkerId>& workers) {
                wta::testing::for_each_subset<TaskId>(n, m, [&](const std::vector<TaskId>& tasks) {
                    ++inputs;
                    auto r = assign_explicit_set(levels, reps, w, n, workers, tasks);
                    if (r.fallback_pairs != 0 || !is_perfect_matching(r.matching, workers, tasks)) ++failures;
                });
            });
        }
        CHECK(inputs == 735471);  // C(24, 8)
        CHECK(failures == 0);
    }

    TEST_CASE("explicit variant on multisets realizes the input") {
        std::mt19937_64 rng(44);
        const std::uint32_t w = 6;
        const TaskId t = 5;
        auto levels = random_explicit_levels(w, lifted_universe(w, t), 7);
        for (int trial = 0; trial < 200; ++trial) {
            auto tasks = random_multiset(t, rng() % (w + 1), rng);
            auto r = assign_explicit(levels, 4, w, tasks);
            CHECK(r.assignment.realizes(tasks));
        }
    }
}
