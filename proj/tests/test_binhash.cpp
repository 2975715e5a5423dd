#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wta/binhash.hpp"

using namespace wta;
using wta::testing::naive_apply;
using wta::testing::naive_score;

namespace {

std::vector<std::pair<WorkerId, TaskId>> as_pairs(const PartialAssignment& p) {
    std::vector<std::pair<WorkerId, TaskId>> out;
    for (const auto& m : p) out.emplace_back(m.worker, m.task);
    return out;
}

WorkerTaskInput random_input(std::uint32_t w, TaskId n, std::mt19937_64& rng) {
    std::vector<WorkerId> workers;
    std::vector<TaskId> tasks;
    for (WorkerId i = 1; i <= w; ++i) {
        if (rng() % 2) workers.push_back(i);
    }
    for (TaskId i = 1; i <= n; ++i) {
        if (rng() % 3 == 0) tasks.push_back(i);
    }
    return WorkerTaskInput::make(workers, tasks);
}

// One element added to or removed from W or T.
WorkerTaskInput toggle_one(const WorkerTaskInput& in, std::uint32_t w, TaskId n, std::mt19937_64& rng) {
    auto workers = in.workers;
    auto tasks = in.tasks;
    if (rng() % 2) {
        const WorkerId x = 1 + rng() % w;
        auto it = std::find(workers.begin(), workers.end(), x);
        if (it != workers.end()) {
            workers.erase(it);
        } else {
            workers.push_back(x);
        }
    } else {
        const TaskId x = 1 + rng() % n;
        auto it = std::find(tasks.begin(), tasks.end(), x);
        if (it != tasks.end()) {
            tasks.erase(it);
        } else {
            tasks.push_back(x);
        }
    }
    return WorkerTaskInput::make(workers, tasks);
}

}  // namespace

TEST_SUITE("binhash") {
    TEST_CASE("single bin forces the match") {
        auto stage = BinHash::seeded(1, 99, 1, 1);
        auto out = apply(stage, WorkerTaskInput::make({1}, {5}));
        CHECK(out.matched == PartialAssignment{{1, 5}});
        CHECK(out.residual.empty());
        CHECK(out.active_bins == 1);
    }

    TEST_CASE("hand trace with explicit tables") {
        auto stage = BinHash::from_tables(2, {{1, 1}, {2, 1}, {3, 2}}, {{4, 2}, {7, 1}, {9, 1}});
        auto out = apply(stage, WorkerTaskInput::make({1, 2, 3}, {4, 7, 9}));
        CHECK(out.matched == PartialAssignment{{1, 7}, {3, 4}});
        CHECK(out.residual.workers == std::vector<WorkerId>{2});
        CHECK(out.residual.tasks == std::vector<TaskId>{9});
        CHECK(out.active_bins == 2);
    }

    TEST_CASE("no active bin leaves the input unchanged") {
        auto stage = BinHash::from_tables(2, {{1, 1}, {2, 1}}, {{3, 2}, {4, 2}});
        const auto in = WorkerTaskInput::make({1, 2}, {3, 4});
        auto out = apply(stage, in);
        CHECK(out.matched.empty());
        CHECK(out.residual == in);
        CHECK(out.active_bins == 0);
    }

    TEST_CASE("table lookups outside the table throw") {
        auto stage = BinHash::from_tables(2, {{1, 1}}, {{3, 2}});
        CHECK_THROWS((void)stage.worker_bin(2));
        CHECK_THROWS((void)stage.task_bin(4));
    }

    TEST_CASE("difference score examples") {
        const auto a = WorkerTaskInput::make({1, 2}, {5, 6});
        CHECK(difference_score(a, a) == 0);
        CHECK(difference_score(a, WorkerTaskInput::make({1, 3}, {5, 6})) == 2);
        CHECK(difference_score(WorkerTaskInput::make({1}, {5}), WorkerTaskInput::make({2}, {6})) == 4);
    }

    TEST_CASE("compose with one stage equals apply") {
        auto stage = BinHash::seeded(3, 5, 1, 1);
        const auto in = WorkerTaskInput::make({1, 2, 3, 4}, {2, 8, 11, 12});
        std::vector<BinHash> stages{stage};
        auto composed = compose(stages, in);
        auto direct = apply(stage, in);
        CHECK(composed.matched == direct.matched);
        CHECK(composed.residual == direct.residual);
        REQUIRE(composed.trace.size() == 1);
    }

    TEST_CASE("second stage sees an empty input after a full match") {
        std::vector<BinHash> stages{BinHash::seeded(1, 1, 1, 1), BinHash::seeded(4, 1, 1, 2)};
        auto composed = compose(stages, WorkerTaskInput::make({3}, {9}));
        REQUIRE(composed.trace.size() == 2);
        CHECK(composed.trace[0].matched.size() == 1);
        CHECK(composed.trace[1].matched.empty());
        CHECK(composed.residual.empty());
    }

    TEST_CASE("compose_counts agrees with compose") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<BinHash> stages;
            for (int j = 1; j <= 6; ++j) stages.push_back(BinHash::seeded(1 + rng() % 5, rng(), 1, j));
            auto in = random_input(10, 30, rng);
            auto full = compose(stages, in);
            auto counts = compose_counts(stages, in);
            CHECK(full.matched.size() == counts.matched.size());
            auto sorted = full.matched;
            std::sort(sorted.begin(), sorted.end());
            auto sorted_counts = counts.matched;
            std::sort(sorted_counts.begin(), sorted_counts.end());
            CHECK(sorted == sorted_counts);
            CHECK(full.residual == counts.residual);
        }
    }

    TEST_CASE("apply matches the bin rule and is deterministic") {
        std::mt19937_64 rng(32);
        for (int trial = 0; trial < 2000; ++trial) {
            const std::uint64_t k = 1 + rng() % 8;
            auto stage = BinHash::seeded(k, rng(), 1 + rng() % 5, 1 + rng() % 5);
            auto in = random_input(12, 40, rng);
            auto out = apply(stage, in);
            auto ref = naive_apply(stage, in.workers, in.tasks);
            CHECK(as_pairs(out.matched) == ref.matched);
            CHECK(out.residual.workers == ref.residual_workers);
            CHECK(out.residual.tasks == ref.residual_tasks);
            CHECK(out.active_bins == ref.active);
            auto again = apply(stage, in);
            CHECK(again.matched == out.matched);
        }
    }

    TEST_CASE("seeded bins are in range and stable") {
        auto stage = BinHash::seeded(7, 123, 2, 3);
        auto copy = BinHash::seeded(7, 123, 2, 3);
        for (WorkerId x = 1; x <= 200; ++x) {
            CHECK(stage.worker_bin(x) >= 1);
            CHECK(stage.worker_bin(x) <= 7);
            CHECK(stage.worker_bin(x) == copy.worker_bin(x));
            CHECK(stage.task_bin(x) == copy.task_bin(x));
        }
    }

    TEST_CASE("outputs are never further apart than inputs") {
        std::mt19937_64 rng(33);
        for (int trial = 0; trial < 20000; ++trial) {
            const std::uint32_t w = 1 + rng() % 16;
            const TaskId n = 1 + rng() % 64;
            auto stage = BinHash::seeded(1 + rng() % 16, rng(), 1, 1);
            auto a = random_input(w, n, rng);
            auto b = a;
            const int changes = static_cast<int>(rng() % 5);
            for (int c = 0; c < changes; ++c) b = toggle_one(b, w, n, rng);
            auto oa = naive_apply(stage, a.workers, a.tasks);
            auto ob = naive_apply(stage, b.workers, b.tasks);
            const auto in_d = naive_score(a, b);
            const auto out_d = wta::testing::sym_diff_size(oa.residual_workers, ob.residual_workers) +
                               wta::testing::sym_diff_size(oa.residual_tasks, ob.residual_tasks);
            REQUIRE(out_d <= in_d);
        }
    }

    TEST_CASE("unit-distance inputs change at most 2d matched pairs") {
        std::mt19937_64 rng(34);
        for (int trial = 0; trial < 20000; ++trial) {
            const std::uint32_t w = 1 + rng() % 16;
            const TaskId n = 1 + rng() % 64;
            auto stage = BinHash::seeded(1 + rng() % 16, rng(), 1, 1);
            auto a = random_input(w, n, rng);
            auto b = toggle_one(a, w, n, rng);
            if (rng() % 2) b = toggle_one(b, w, n, rng);
            const auto d = naive_score(a, b);
            if (d > 2) continue;
            auto oa = apply(stage, a);
            auto ob = apply(stage, b);
            const auto diff = symmetric_difference(oa.matched, ob.matched);
            CHECK(diff == wta::testing::sym_diff_size(as_pairs(oa.matched), as_pairs(ob.matched)));
            REQUIRE(diff <= 2 * d);
        }
    }

    TEST_CASE("stagewise difference is zero on identical inputs") {
        std::vector<BinHash> stages;
        for (int j = 1; j <= 5; ++j) stages.push_back(BinHash::seeded(3, 8, 1, j));
        const auto in = WorkerTaskInput::make({1, 2, 3, 4}, {3, 5, 7, 9});
        for (auto d : stagewise_difference(stages, in, in)) CHECK(d == 0);
    }
}
