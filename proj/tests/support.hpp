#pragma once

// Test-side reference implementations. Kept deliberately naive and
// independent of the library internals they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "wta/binhash.hpp"
#include "wta/core.hpp"

namespace wta::testing {

inline TaskMultiset ms(TaskId universe, std::vector<TaskId> elements) {
    return TaskMultiset::from_elements(universe, elements);
}

inline std::map<TaskId, int> counts(const TaskMultiset& m) {
    std::map<TaskId, int> c;
    for (auto x : m.elements()) ++c[x];
    return c;
}

// Adjacency straight from the definitions: equal sizes with one element
// out and one in, or sizes one apart with a single-element difference.
inline bool naive_adjacent(const TaskMultiset& a, const TaskMultiset& b) {
    auto ca = counts(a);
    auto cb = counts(b);
    std::set<TaskId> keys;
    for (auto& [k, v] : ca) keys.insert(k);
    for (auto& [k, v] : cb) keys.insert(k);
    int a_minus_b = 0;
    int b_minus_a = 0;
    for (auto k : keys) {
        a_minus_b += std::max(0, ca[k] - cb[k]);
        b_minus_a += std::max(0, cb[k] - ca[k]);
    }
    if (a.size() == b.size()) return a_minus_b == 1 && b_minus_a == 1;
    return a_minus_b + b_minus_a == 1;
}

inline std::size_t naive_switching(const Assignment& a, const Assignment& b) {
    std::size_t cost = 0;
    for (WorkerId i = 1; i <= a.workers(); ++i) {
        if (a.task_of(i) != b.task_of(i)) ++cost;
    }
    return cost;
}

template <typename T>
std::size_t sym_diff_size(std::vector<T> a, std::vector<T> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<T> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out.size();
}

inline std::size_t naive_score(const WorkerTaskInput& a, const WorkerTaskInput& b) {
    return sym_diff_size(a.workers, b.workers) + sym_diff_size(a.tasks, b.tasks);
}

struct NaiveOutcome {
    std::vector<std::pair<WorkerId, TaskId>> matched;
    std::vector<WorkerId> residual_workers;
    std::vector<TaskId> residual_tasks;
    std::size_t active{0};
};

// The bin rule spelled out bin by bin.
inline NaiveOutcome naive_apply(const BinHash& stage, const std::vector<WorkerId>& workers,
                                const std::vector<TaskId>& tasks) {
    NaiveOutcome out;
    std::set<WorkerId> used_w;
    std::set<TaskId> used_t;
    for (std::uint64_t bin = 1; bin <= stage.bins(); ++bin) {
        std::optional<WorkerId> best_w;
        std::optional<TaskId> best_t;
        for (auto w : workers) {
            if (stage.worker_bin(w) == bin && (!best_w || w < *best_w)) best_w = w;
        }
        for (auto t : tasks) {
            if (stage.task_bin(t) == bin && (!best_t || t < *best_t)) best_t = t;
        }
        if (best_w && best_t) {
            ++out.active;
            out.matched.emplace_back(*best_w, *best_t);
            used_w.insert(*best_w);
            used_t.insert(*best_t);
        }
    }
    std::sort(out.matched.begin(), out.matched.end());
    for (auto w : workers) {
        if (!used_w.count(w)) out.residual_workers.push_back(w);
    }
    for (auto t : tasks) {
        if (!used_t.count(t)) out.residual_tasks.push_back(t);
    }
    return out;
}

template <typename T>
std::vector<T> random_subset(std::uint64_t universe, std::size_t size, std::mt19937_64& rng) {
    std::vector<T> all(universe);
    for (std::uint64_t i = 0; i < universe; ++i) all[i] = static_cast<T>(i + 1);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
}

// All size-m subsets of [1, n], lexicographic.
template <typename T, typename Fn>
void for_each_subset(std::uint64_t n, std::size_t m, Fn&& fn) {
    std::vector<T> current(m);
    for (std::size_t i = 0; i < m; ++i) current[i] = static_cast<T>(i + 1);
    if (m > n) return;
    while (true) {
        fn(current);
        std::size_t i = m;
        while (i > 0 && current[i - 1] == static_cast<T>(n - (m - i))) --i;
        if (i == 0) return;
        ++current[i - 1];
        for (std::size_t j = i; j < m; ++j) current[j] = current[j - 1] + 1;
    }
}

}  // namespace wta::testing
