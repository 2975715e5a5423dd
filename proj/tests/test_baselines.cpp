#include <doctest.h>

#include <map>
#include <random>

#include "support.hpp"
#include "wta/baselines.hpp"
#include "wta/oracle.hpp"
#include "wta/reduction.hpp"

using namespace wta;
using wta::testing::ms;

TEST_SUITE("baselines") {
    TEST_CASE("sorted order examples") {
        CHECK(sorted_order(ms(9, {2, 5, 9}), 3) == Assignment(3, {2, 5, 9}));
        CHECK(sorted_order(ms(9, {7, 7}), 2) == Assignment(2, {7, 7}));
        CHECK(sorted_order(ms(9, {7, 7}), 3) == Assignment(3, {7, 7}));
        CHECK(switching_cost(sorted_order(ms(3, {1, 2, 3}), 3), sorted_order(ms(3, {2, 3, 3}), 3)) == 2);
        CHECK_THROWS(sorted_order(ms(9, {1, 2, 3}), 2));
    }

    TEST_CASE("sorted order never exceeds min(t - 1, w)") {
        for (std::uint32_t w = 1; w <= 6; ++w) {
            for (TaskId t = 1; t <= 6; ++t) {
                auto states = enumerate_states(w, t, false);
                std::size_t worst = 0;
                for (std::size_t i = 0; i < states.size(); ++i) {
                    for (std::size_t j = i + 1; j < states.size(); ++j) {
                        if (!wta::testing::naive_adjacent(states[i], states[j])) continue;
                        worst = std::max(worst, wta::testing::naive_switching(sorted_order(states[i], w),
                                                                               sorted_order(states[j], w)));
                    }
                }
                CHECK(worst <= std::min<std::size_t>(t - 1, w));
            }
        }
    }

    TEST_CASE("greedy hand trace") {
        // worker 1 prefers 3, then 1, then 2; worker 2 prefers 2, then 1, then 3
        std::map<std::pair<WorkerId, TaskId>, std::uint64_t> keys{{{1, 3}, 0}, {{1, 1}, 1}, {{1, 2}, 2},
                                                                 {{2, 2}, 0}, {{2, 1}, 1}, {{2, 3}, 2}};
        PriorityOracle oracle([&](WorkerId w, LiftedTaskId id) { return keys.at({w, id.base}); });
        CHECK(random_permutation_assign(oracle, ms(3, {1, 2}), 2) == Assignment(2, {1, 2}));
        CHECK(random_permutation_assign(oracle, ms(3, {2, 3}), 2) == Assignment(2, {3, 2}));
    }

    TEST_CASE("single worker takes its favourite") {
        PriorityOracle oracle(77);
        auto tasks = ms(20, {4, 9, 13});
        TaskId best = 0;
        std::uint64_t best_key = ~std::uint64_t{0};
        for (auto x : tasks.elements()) {
            const auto k = oracle.key(1, {x, 1});
            if (k < best_key) {
                best_key = k;
                best = x;
            }
        }
        CHECK(random_permutation_assign(oracle, tasks, 3).task_of(1) == best);
        CHECK(random_permutation_assign(oracle, ms(20, {best}), 1).task_of(1) == best);
    }

    TEST_CASE("greedy result realizes multisets") {
        std::mt19937_64 rng(51);
        for (int trial = 0; trial < 300; ++trial) {
            const std::uint32_t w = 1 + rng() % 10;
            PriorityOracle oracle(rng());
            auto tasks = random_multiset(7, rng() % (w + 1), rng);
            CHECK(random_permutation_assign(oracle, tasks, w).realizes(tasks));
        }
    }

    TEST_CASE("remainders of adjacent sets differ by at most one task") {
        std::mt19937_64 rng(52);
        const std::uint32_t w = 12;
        const TaskId t = 40;
        for (int trial = 0; trial < 500; ++trial) {
            PriorityOracle oracle(rng());
            auto a = TaskMultiset::from_elements(t, wta::testing::random_subset<TaskId>(t, w, rng));
            auto b = a;
            do {
                b = adjacent_step(a, rng);
            } while (!b.is_set());
            auto ta = random_permutation_trace(oracle, w, lift(a, w));
            auto tb = random_permutation_trace(oracle, w, lift(b, w));
            REQUIRE(ta.remainders.size() == tb.remainders.size());
            for (std::size_t i = 0; i < ta.remainders.size(); ++i) {
                auto ra = ta.remainders[i];
                auto rb = tb.remainders[i];
                std::vector<TaskId> only_a;
                std::set_difference(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(only_a));
                CHECK(only_a.size() <= 1);
            }
        }
    }

    TEST_CASE("expected bound is twice the harmonic number") {
        double h = 0.0;
        for (int i = 1; i <= 64; ++i) h += 1.0 / i;
        CHECK(random_permutation_expected_bound(64) == doctest::Approx(2.0 * h).epsilon(1e-12));
        CHECK(random_permutation_expected_bound(1) == doctest::Approx(2.0));
    }
}
