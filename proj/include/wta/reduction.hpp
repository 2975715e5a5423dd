#pragma once

// Multiset-to-set reduction: task multisets over [t] become task sets over
// [n] with n = w * t, by numbering the copies of each task.

#include <cstdint>

#include "wta/core.hpp"

namespace wta {

struct LiftedTaskId {
    TaskId base{0};          // in [1, t]
    std::uint32_t copy{0};   // in [1, w]

    friend auto operator<=>(const LiftedTaskId&, const LiftedTaskId&) = default;
};

/// (base - 1) * w + copy. Copies of one task are contiguous, so the
/// encoding preserves the lexicographic order of (base, copy).
TaskId encode_lifted(LiftedTaskId id, std::uint32_t w);
LiftedTaskId decode_lifted(TaskId encoded, std::uint32_t w);

/// Universe size n = w * t of the lifted task space.
TaskId lifted_universe(std::uint32_t w, TaskId t);

/// S(T): copies (i,1)..(i,m_T(i)) of every task i, encoded, as a set over [w*t].
/// Throws when a multiplicity exceeds w.
TaskMultiset lift(const TaskMultiset& tasks, std::uint32_t w);

/// Drops the copy index of every assigned lifted task. `lifted` must assign
/// workers to exactly lift(tasks, w).
Assignment project(const Assignment& lifted, const TaskMultiset& tasks, std::uint32_t w);

}  // namespace wta
