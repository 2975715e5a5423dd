#pragma once

// Reference assignment functions: sorted order and the greedy
// random-permutation rule.

#include <cstdint>
#include <functional>
#include <vector>

#include "wta/core.hpp"
#include "wta/reduction.hpp"

namespace wta {

/// Worker i takes the i-th smallest element of T.
Assignment sorted_order(const TaskMultiset& tasks, std::uint32_t w);

/// Each worker's preference order over lifted tasks, realised as keys:
/// lower key is preferred, equal keys fall back to the smaller task id.
class PriorityOracle {
public:
    using KeyFn = std::function<std::uint64_t(WorkerId, LiftedTaskId)>;

    explicit PriorityOracle(std::uint64_t seed);
    explicit PriorityOracle(KeyFn keys);

    [[nodiscard]] std::uint64_t key(WorkerId worker, LiftedTaskId task) const;
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_{0};
    KeyFn keys_;
};

struct GreedyTrace {
    Assignment lifted;                          // over lifted task ids
    std::vector<std::vector<TaskId>> remainders;  // remainders[i] = tasks left after worker i+1
};

/// Greedy over a lifted task set: worker 1, 2, ... takes its most preferred
/// remaining task. `lifted_tasks` holds encoded ids over [w * t].
GreedyTrace random_permutation_trace(const PriorityOracle& oracle, std::uint32_t w,
                                     const TaskMultiset& lifted_tasks);

/// Lift, run the greedy rule, project back.
Assignment random_permutation_assign(const PriorityOracle& oracle, const TaskMultiset& tasks, std::uint32_t w);

/// sum_{i=1}^{w} 2 / (w - i + 1).
double random_permutation_expected_bound(std::uint32_t w);

}  // namespace wta
