#include "wta/baselines.hpp"

#include <stdexcept>

#include "wta/binhash.hpp"

namespace wta {

Assignment sorted_order(const TaskMultiset& tasks, std::uint32_t w) {
    if (tasks.size() > w) throw std::invalid_argument("multiset larger than w");
    return Assignment(w, tasks.elements());
}

PriorityOracle::PriorityOracle(std::uint64_t seed) : seed_(seed) {}

PriorityOracle::PriorityOracle(KeyFn keys) : keys_(std::move(keys)) {}

std::uint64_t PriorityOracle::key(WorkerId worker, LiftedTaskId task) const {
    if (keys_) return keys_(worker, task);
    return mix64(mix64(mix64(seed_ ^ 0x7072696fULL) ^ worker) ^ mix64(task.base) ^ (std::uint64_t{task.copy} << 48));
}

GreedyTrace random_permutation_trace(const PriorityOracle& oracle, std::uint32_t w,
                                     const TaskMultiset& lifted_tasks) {
    if (lifted_tasks.size() > w) throw std::invalid_argument("task set larger than w");
    if (!lifted_tasks.is_set()) throw std::invalid_argument("lifted tasks must form a set");

    std::vector<TaskId> remaining = lifted_tasks.elements();
    GreedyTrace trace;
    std::vector<TaskId> chosen;
    chosen.reserve(remaining.size());
    while (!remaining.empty()) {
        const auto worker = static_cast<WorkerId>(chosen.size() + 1);
        std::size_t best = 0;
        std::uint64_t best_key = oracle.key(worker, decode_lifted(remaining[0], w));
        for (std::size_t i = 1; i < remaining.size(); ++i) {
            const auto key = oracle.key(worker, decode_lifted(remaining[i], w));
            // remaining is sorted, so strict < keeps the smaller id on ties
            if (key < best_key) {
                best_key = key;
                best = i;
            }
        }
        chosen.push_back(remaining[best]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        trace.remainders.push_back(remaining);
    }
    trace.lifted = Assignment(w, std::move(chosen));
    return trace;
}

Assignment random_permutation_assign(const PriorityOracle& oracle, const TaskMultiset& tasks, std::uint32_t w) {
    if (tasks.size() > w) throw std::invalid_argument("multiset larger than w");
    const auto lifted = lift(tasks, w);
    return project(random_permutation_trace(oracle, w, lifted).lifted, tasks, w);
}

double random_permutation_expected_bound(std::uint32_t w) {
    double sum = 0.0;
    for (std::uint32_t i = 1; i <= w; ++i) sum += 2.0 / static_cast<double>(w - i + 1);
    return sum;
}

}  // namespace wta
