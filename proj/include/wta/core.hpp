#pragma once

// Workers, task multisets, assignments and the switching-cost metric.

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wta {

using WorkerId = std::uint32_t;  // 1-based
using TaskId = std::uint64_t;    // 1-based

/// A multiset over the task universe [1, universe], kept as sorted
/// (task, multiplicity) runs. Task ids are strictly increasing across runs
/// and every multiplicity is at least one.
///
/// The worker bound |T| <= w is a property of the assignment problem rather
/// than of the multiset, so it is checked by the functions that take a `w`.
class TaskMultiset {
public:
    struct Run {
        TaskId task{0};
        std::uint32_t count{0};

        friend bool operator==(const Run&, const Run&) = default;
    };

    TaskMultiset() = default;
    explicit TaskMultiset(TaskId universe) : universe_(universe) {}

    /// Elements may be given in any order.
    static TaskMultiset from_elements(TaskId universe, std::span<const TaskId> elements);
    static TaskMultiset from_runs(TaskId universe, std::vector<Run> runs);

    /// Parses "1,2,2,5". The empty string is the empty multiset.
    static TaskMultiset parse(std::string_view text, TaskId universe);
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] TaskId universe() const noexcept { return universe_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] bool empty() const noexcept { return size_ == 0; }
    [[nodiscard]] std::size_t distinct() const noexcept { return runs_.size(); }
    [[nodiscard]] const std::vector<Run>& runs() const noexcept { return runs_; }
    [[nodiscard]] std::uint32_t multiplicity(TaskId task) const noexcept;
    [[nodiscard]] std::uint32_t max_multiplicity() const noexcept;
    [[nodiscard]] bool is_set() const noexcept { return max_multiplicity() <= 1; }

    /// Non-decreasing expansion, e.g. {1:1, 2:2} -> 1,2,2.
    [[nodiscard]] std::vector<TaskId> elements() const;

    void insert(TaskId task, std::uint32_t count = 1);
    /// Removes one copy; returns false if the task was absent.
    bool erase_one(TaskId task);

    friend bool operator==(const TaskMultiset& a, const TaskMultiset& b) {
        return a.universe_ == b.universe_ && a.runs_ == b.runs_;
    }
    /// Lexicographic on the sorted element sequence.
    friend std::strong_ordering operator<=>(const TaskMultiset& a, const TaskMultiset& b);

private:
    void check_task(TaskId task) const;

    TaskId universe_{0};
    std::size_t size_{0};
    std::vector<Run> runs_;
};

struct MultisetAlgebra {
    TaskMultiset difference;    // m(i) = max(0, mA(i) - mB(i))
    TaskMultiset union_;        // m(i) = max(mA(i), mB(i))
    TaskMultiset intersection;  // m(i) = min(mA(i), mB(i))
};

TaskMultiset multiset_difference(const TaskMultiset& a, const TaskMultiset& b);
TaskMultiset multiset_union(const TaskMultiset& a, const TaskMultiset& b);
TaskMultiset multiset_intersection(const TaskMultiset& a, const TaskMultiset& b);
MultisetAlgebra multiset_algebra(const TaskMultiset& a, const TaskMultiset& b);

/// Equal sizes with one element swapped, or sizes differing by one with a
/// symmetric difference of exactly one element.
bool is_adjacent(const TaskMultiset& a, const TaskMultiset& b);

/// Worker i (1-based) holds task tasks()[i-1]; workers past tasks().size()
/// are unassigned.
class Assignment {
public:
    Assignment() = default;
    Assignment(std::uint32_t workers, std::vector<TaskId> tasks);

    [[nodiscard]] std::uint32_t workers() const noexcept { return workers_; }
    [[nodiscard]] std::size_t assigned() const noexcept { return tasks_.size(); }
    [[nodiscard]] const std::vector<TaskId>& tasks() const noexcept { return tasks_; }
    [[nodiscard]] std::optional<TaskId> task_of(WorkerId worker) const;

    /// True when the assigned tasks form exactly `tasks` (multiplicity-aware).
    [[nodiscard]] bool realizes(const TaskMultiset& tasks) const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::uint32_t workers_{0};
    std::vector<TaskId> tasks_;
};

/// Number of workers whose task differs; assigned <-> unassigned counts.
std::size_t switching_cost(const Assignment& a, const Assignment& b);

struct StepOptions {
    bool size_varying{false};
    std::size_t max_size{0};  // worker count; only consulted for size-varying moves
};

/// A move of the random walk: remove one copy and/or insert one element.
struct Step {
    std::optional<TaskId> remove;
    std::optional<TaskId> insert;
};

TaskMultiset apply_step(const TaskMultiset& tasks, const Step& step);

/// Random adjacent neighbour. Default moves keep the size: one copy is
/// removed (uniform over the element sequence) and a different task id,
/// uniform over the remaining universe, is inserted. With size_varying,
/// pure insertions and pure removals are also drawn.
TaskMultiset adjacent_step(const TaskMultiset& tasks, std::mt19937_64& rng,
                           const StepOptions& options = {});

/// Uniform random multiset of the given size (independent uniform draws).
TaskMultiset random_multiset(TaskId universe, std::size_t size, std::mt19937_64& rng);

}  // namespace wta
