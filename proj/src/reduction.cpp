#include "wta/reduction.hpp"

#include <stdexcept>
#include <string>

namespace wta {

TaskId encode_lifted(LiftedTaskId id, std::uint32_t w) {
    if (id.base < 1 || id.copy < 1 || id.copy > w) {
        throw std::out_of_range("lifted id out of range");
    }
    return (id.base - 1) * w + id.copy;
}

LiftedTaskId decode_lifted(TaskId encoded, std::uint32_t w) {
    if (encoded < 1 || w == 0) throw std::out_of_range("lifted id out of range");
    return {(encoded - 1) / w + 1, static_cast<std::uint32_t>((encoded - 1) % w + 1)};
}

TaskId lifted_universe(std::uint32_t w, TaskId t) { return static_cast<TaskId>(w) * t; }

TaskMultiset lift(const TaskMultiset& tasks, std::uint32_t w) {
    std::vector<TaskMultiset::Run> runs;
    runs.reserve(tasks.size());
    for (const auto& run : tasks.runs()) {
        if (run.count > w) {
            throw std::invalid_argument("task " + std::to_string(run.task) + " has multiplicity " +
                                        std::to_string(run.count) + " > w = " + std::to_string(w));
        }
        for (std::uint32_t copy = 1; copy <= run.count; ++copy) {
            runs.push_back({encode_lifted({run.task, copy}, w), 1});
        }
    }
    return TaskMultiset::from_runs(lifted_universe(w, tasks.universe()), std::move(runs));
}

Assignment project(const Assignment& lifted, const TaskMultiset& tasks, std::uint32_t w) {
    if (!lifted.realizes(lift(tasks, w))) {
        throw std::invalid_argument("assignment is not a bijection onto the lifted task set");
    }
    std::vector<TaskId> out;
    out.reserve(lifted.assigned());
    for (TaskId encoded : lifted.tasks()) out.push_back(decode_lifted(encoded, w).base);
    return Assignment(lifted.workers(), std::move(out));
}

}  // namespace wta
