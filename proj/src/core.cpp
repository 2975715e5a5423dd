#include "wta/core.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace wta {

namespace {

template <typename Combine>
TaskMultiset merge_runs(const TaskMultiset& a, const TaskMultiset& b, Combine combine) {
    if (a.universe() != b.universe()) {
        throw std::invalid_argument("multisets over different task universes");
    }
    std::vector<TaskMultiset::Run> out;
    const auto& ra = a.runs();
    const auto& rb = b.runs();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ra.size() || j < rb.size()) {
        TaskId task;
        std::uint32_t ma = 0;
        std::uint32_t mb = 0;
        if (j == rb.size() || (i < ra.size() && ra[i].task < rb[j].task)) {
            task = ra[i].task;
            ma = ra[i++].count;
        } else if (i == ra.size() || rb[j].task < ra[i].task) {
            task = rb[j].task;
            mb = rb[j++].count;
        } else {
            task = ra[i].task;
            ma = ra[i++].count;
            mb = rb[j++].count;
        }
        if (auto m = combine(ma, mb); m > 0) out.push_back({task, m});
    }
    return TaskMultiset::from_runs(a.universe(), std::move(out));
}

}  // namespace

TaskMultiset TaskMultiset::from_elements(TaskId universe, std::span<const TaskId> elements) {
    std::vector<TaskId> sorted(elements.begin(), elements.end());
    std::sort(sorted.begin(), sorted.end());
    TaskMultiset out(universe);
    for (TaskId task : sorted) {
        out.check_task(task);
        if (!out.runs_.empty() && out.runs_.back().task == task) {
            ++out.runs_.back().count;
        } else {
            out.runs_.push_back({task, 1});
        }
    }
    out.size_ = sorted.size();
    return out;
}

TaskMultiset TaskMultiset::from_runs(TaskId universe, std::vector<Run> runs) {
    TaskMultiset out(universe);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        out.check_task(runs[i].task);
        if (runs[i].count == 0) throw std::invalid_argument("zero multiplicity run");
        if (i > 0 && runs[i - 1].task >= runs[i].task) {
            throw std::invalid_argument("runs must have strictly increasing task ids");
        }
        out.size_ += runs[i].count;
    }
    out.runs_ = std::move(runs);
    return out;
}

TaskMultiset TaskMultiset::parse(std::string_view text, TaskId universe) {
    std::vector<TaskId> elements;
    if (!text.empty()) {
        std::size_t pos = 0;
        while (true) {
            const auto comma = text.find(',', pos);
            const auto token = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
            TaskId value = 0;
            const auto* first = token.data();
            const auto* last = token.data() + token.size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (token.empty() || ec != std::errc{} || ptr != last) {
                throw std::invalid_argument("bad task id '" + std::string(token) + "'");
            }
            if (!elements.empty() && value < elements.back()) {
                throw std::invalid_argument("task ids must be non-decreasing");
            }
            elements.push_back(value);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    return from_elements(universe, elements);
}

std::string TaskMultiset::to_string() const {
    std::string out;
    for (const auto& run : runs_) {
        for (std::uint32_t c = 0; c < run.count; ++c) {
            if (!out.empty()) out += ',';
            out += std::to_string(run.task);
        }
    }
    return out;
}

std::uint32_t TaskMultiset::multiplicity(TaskId task) const noexcept {
    auto it = std::lower_bound(runs_.begin(), runs_.end(), task,
                               [](const Run& r, TaskId t) { return r.task < t; });
    return (it != runs_.end() && it->task == task) ? it->count : 0;
}

std::uint32_t TaskMultiset::max_multiplicity() const noexcept {
    std::uint32_t m = 0;
    for (const auto& run : runs_) m = std::max(m, run.count);
    return m;
}

std::vector<TaskId> TaskMultiset::elements() const {
    std::vector<TaskId> out;
    out.reserve(size_);
    for (const auto& run : runs_) out.insert(out.end(), run.count, run.task);
    return out;
}

void TaskMultiset::insert(TaskId task, std::uint32_t count) {
    check_task(task);
    if (count == 0) return;
    auto it = std::lower_bound(runs_.begin(), runs_.end(), task,
                               [](const Run& r, TaskId t) { return r.task < t; });
    if (it != runs_.end() && it->task == task) {
        it->count += count;
    } else {
        runs_.insert(it, Run{task, count});
    }
    size_ += count;
}

bool TaskMultiset::erase_one(TaskId task) {
    auto it = std::lower_bound(runs_.begin(), runs_.end(), task,
                               [](const Run& r, TaskId t) { return r.task < t; });
    if (it == runs_.end() || it->task != task) return false;
    if (--it->count == 0) runs_.erase(it);
    --size_;
    return true;
}

void TaskMultiset::check_task(TaskId task) const {
    if (task < 1 || task > universe_) {
        throw std::out_of_range("task id " + std::to_string(task) + " outside [1, " +
                                std::to_string(universe_) + "]");
    }
}

std::strong_ordering operator<=>(const TaskMultiset& a, const TaskMultiset& b) {
    if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

TaskMultiset multiset_difference(const TaskMultiset& a, const TaskMultiset& b) {
    return merge_runs(a, b, [](std::uint32_t x, std::uint32_t y) { return x > y ? x - y : 0u; });
}

TaskMultiset multiset_union(const TaskMultiset& a, const TaskMultiset& b) {
    return merge_runs(a, b, [](std::uint32_t x, std::uint32_t y) { return std::max(x, y); });
}

TaskMultiset multiset_intersection(const TaskMultiset& a, const TaskMultiset& b) {
    return merge_runs(a, b, [](std::uint32_t x, std::uint32_t y) { return std::min(x, y); });
}

MultisetAlgebra multiset_algebra(const TaskMultiset& a, const TaskMultiset& b) {
    return {multiset_difference(a, b), multiset_union(a, b), multiset_intersection(a, b)};
}

bool is_adjacent(const TaskMultiset& a, const TaskMultiset& b) {
    const auto a_minus_b = multiset_difference(a, b).size();
    const auto b_minus_a = multiset_difference(b, a).size();
    if (a.size() == b.size()) return a_minus_b == 1 && b_minus_a == 1;
    const auto gap = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    return gap == 1 && a_minus_b + b_minus_a == 1;
}

Assignment::Assignment(std::uint32_t workers, std::vector<TaskId> tasks)
    : workers_(workers), tasks_(std::move(tasks)) {
    if (tasks_.size() > workers_) {
        throw std::invalid_argument("more assigned tasks than workers");
    }
}

std::optional<TaskId> Assignment::task_of(WorkerId worker) const {
    if (worker < 1 || worker > tasks_.size()) return std::nullopt;
    return tasks_[worker - 1];
}

bool Assignment::realizes(const TaskMultiset& tasks) const {
    if (tasks.size() != tasks_.size()) return false;
    std::vector<TaskId> sorted = tasks_;
    std::sort(sorted.begin(), sorted.end());
    return sorted == tasks.elements();
}

std::size_t switching_cost(const Assignment& a, const Assignment& b) {
    if (a.workers() != b.workers()) {
        throw std::invalid_argument("assignments over different worker counts");
    }
    const auto common = std::min(a.assigned(), b.assigned());
    std::size_t cost = std::max(a.assigned(), b.assigned()) - common;
    for (std::size_t i = 0; i < common; ++i) {
        if (a.tasks()[i] != b.tasks()[i]) ++cost;
    }
    return cost;
}

TaskMultiset apply_step(const TaskMultiset& tasks, const Step& step) {
    TaskMultiset out = tasks;
    if (step.remove && !out.erase_one(*step.remove)) {
        throw std::invalid_argument("removed task not present");
    }
    if (step.insert) out.insert(*step.insert);
    return out;
}

TaskMultiset adjacent_step(const TaskMultiset& tasks, std::mt19937_64& rng,
                           const StepOptions& options) {
    const TaskId universe = tasks.universe();
    const bool can_swap = !tasks.empty() && universe >= 2;
    const bool can_remove = options.size_varying && !tasks.empty();
    const bool can_insert = options.size_varying && tasks.size() < options.max_size;

    std::vector<int> moves;
    if (can_swap) moves.push_back(0);
    if (can_remove) moves.push_back(1);
    if (can_insert) moves.push_back(2);
    if (moves.empty()) throw std::invalid_argument("no adjacent move available");

    const int move = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];

    auto pick_element = [&] {
        const auto elements = tasks.elements();
        return elements[std::uniform_int_distribution<std::size_t>(0, elements.size() - 1)(rng)];
    };

    Step step;
    if (move == 0) {
        const TaskId removed = pick_element();
        TaskId inserted = std::uniform_int_distribution<TaskId>(1, universe - 1)(rng);
        if (inserted >= removed) ++inserted;
        step = {removed, inserted};
    } else if (move == 1) {
        step.remove = pick_element();
    } else {
        step.insert = std::uniform_int_distribution<TaskId>(1, universe)(rng);
    }
    return apply_step(tasks, step);
}

TaskMultiset random_multiset(TaskId universe, std::size_t size, std::mt19937_64& rng) {
    std::uniform_int_distribution<TaskId> pick(1, universe);
    std::vector<TaskId> elements(size);
    for (auto& e : elements) e = pick(rng);
    return TaskMultiset::from_elements(universe, elements);
}

}  // namespace wta
