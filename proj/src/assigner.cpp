#include "wta/assigner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wta/reduction.hpp"

namespace wta {

namespace {

void check_set_input(std::span<const WorkerId> workers, std::span<const TaskId> tasks, std::uint32_t w,
                     TaskId n) {
    if (workers.size() != tasks.size()) {
        throw std::invalid_argument("worker and task sets differ in size (" + std::to_string(workers.size()) +
                                    " vs " + std::to_string(tasks.size()) + ")");
    }
    for (WorkerId worker : workers) {
        if (worker < 1 || worker > w) throw std::out_of_range("worker id outside [1, w]");
    }
    for (TaskId task : tasks) {
        if (task < 1 || task > n) throw std::out_of_range("task id outside [1, n]");
    }
}

WorkerTaskInput make_input(std::span<const WorkerId> workers, std::span<const TaskId> tasks) {
    auto input = WorkerTaskInput::make({workers.begin(), workers.end()}, {tasks.begin(), tasks.end()});
    if (input.workers.size() != workers.size() || input.tasks.size() != tasks.size()) {
        throw std::invalid_argument("duplicate workers or tasks in set input");
    }
    return input;
}

// Lifts T, assigns workers 1..|T| to the lifted set and projects back.
template <typename SetAssigner>
AssignResult assign_via_lift(std::uint32_t w, TaskId t, const TaskMultiset& tasks, SetAssigner&& assign_lifted) {
    if (tasks.universe() != t) throw std::invalid_argument("multiset universe does not match t");
    if (tasks.size() > w) throw std::invalid_argument("multiset larger than w");

    const auto lifted = lift(tasks, w);
    std::vector<WorkerId> workers(lifted.size());
    for (std::size_t i = 0; i < workers.size(); ++i) workers[i] = static_cast<WorkerId>(i + 1);
    const auto lifted_tasks = lifted.elements();

    SetAssignResult set_result = assign_lifted(workers, lifted_tasks);

    std::vector<TaskId> by_worker(workers.size());
    for (const auto& pair : set_result.matching) by_worker[pair.worker - 1] = pair.task;
    const Assignment lifted_assignment(w, std::move(by_worker));
    return {project(lifted_assignment, tasks, w), set_result.fallback_pairs,
            std::move(set_result.per_round_matches)};
}

}  // namespace

std::uint32_t outer_round_count(std::uint32_t w) {
    std::uint32_t rounds = 1;
    long double power = 1.1L;
    while (power < static_cast<long double>(w)) {
        power *= 1.1L;
        ++rounds;
    }
    return rounds;
}

std::uint64_t bins_for_round(std::uint32_t w, std::uint32_t i) {
    const long double k = std::ceil(static_cast<long double>(w) / std::pow(1.1L, static_cast<long double>(i)));
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

std::uint32_t repetitions_per_round(std::uint32_t c, TaskId n) {
    std::uint32_t log2n = 0;
    while ((TaskId{1} << log2n) < n) ++log2n;
    return std::max<std::uint32_t>(1, c * log2n);
}

RoundSchedule RoundSchedule::build(std::uint32_t w, TaskId t, std::uint32_t c, std::uint64_t master_seed) {
    if (w < 1 || t < 1 || c < 1) throw std::invalid_argument("schedule needs w, t, c >= 1");
    RoundSchedule s;
    s.w_ = w;
    s.t_ = t;
    s.c_ = c;
    s.seed_ = master_seed;
    s.outer_ = outer_round_count(w);
    s.reps_ = repetitions_per_round(c, s.n());
    s.stages_.reserve(static_cast<std::size_t>(s.outer_) * s.reps_);
    for (std::uint32_t i = 1; i <= s.outer_; ++i) {
        const auto k = bins_for_round(w, i);
        for (std::uint32_t j = 1; j <= s.reps_; ++j) {
            s.stages_.push_back(BinHash::seeded(k, master_seed, i, j));
        }
    }
    return s;
}

RoundSchedule::Round RoundSchedule::round(std::size_t index) const {
    const auto& p = stages_.at(index).provenance();
    return {p.round, p.repetition, stages_[index].bins()};
}

SetAssignResult complete_with_fallback(std::span<const BinHash> stages, const WorkerTaskInput& input) {
    auto run = compose_counts(stages, input);
    SetAssignResult out;
    out.matching = std::move(run.matched);
    out.per_round_matches = std::move(run.per_stage);
    const auto& left = run.residual;
    const auto leftover = std::min(left.workers.size(), left.tasks.size());
    for (std::size_t i = 0; i < leftover; ++i) out.matching.push_back({left.workers[i], left.tasks[i]});
    out.fallback_pairs = leftover;
    std::sort(out.matching.begin(), out.matching.end());
    return out;
}

SetAssignResult assign_set(const RoundSchedule& schedule, std::span<const WorkerId> workers,
                           std::span<const TaskId> tasks) {
    check_set_input(workers, tasks, schedule.w(), schedule.n());
    return complete_with_fallback(schedule.stages(), make_input(workers, tasks));
}

AssignResult assign(const RoundSchedule& schedule, const TaskMultiset& tasks) {
    return assign_via_lift(schedule.w(), schedule.t(), tasks,
                           [&](std::span<const WorkerId> w, std::span<const TaskId> t) {
                               return assign_set(schedule, w, t);
                           });
}

std::vector<std::pair<std::size_t, std::size_t>> round_switches(const RoundSchedule& schedule, const TaskMultiset& a,
                                                                const TaskMultiset& b) {
    auto lifted_input = [&](const TaskMultiset& tasks) {
        if (tasks.size() > schedule.w()) throw std::invalid_argument("multiset larger than w");
        const auto lifted = lift(tasks, schedule.w());
        std::vector<WorkerId> workers(lifted.size());
        for (std::size_t i = 0; i < workers.size(); ++i) workers[i] = static_cast<WorkerId>(i + 1);
        return WorkerTaskInput{std::move(workers), lifted.elements()};
    };
    const auto diffs = stagewise_difference(schedule.stages(), lifted_input(a), lifted_input(b));
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i] != 0) out.emplace_back(i, diffs[i]);
    }
    return out;
}

DisperserFamily::DisperserFamily(std::uint64_t domain, std::uint32_t seeds, std::uint32_t bins,
                                 std::uint32_t min_entropy, double epsilon, std::vector<std::uint32_t> table)
    : domain_(domain), seeds_(seeds), bins_(bins), min_entropy_(min_entropy), epsilon_(epsilon),
      table_(std::move(table)) {
    if (domain_ < 1 || seeds_ < 1 || bins_ < 1) throw std::invalid_argument("disperser dimensions must be >= 1");
    if (table_.size() != domain_ * seeds_) throw std::invalid_argument("disperser table has wrong size");
    for (auto bin : table_) {
        if (bin < 1 || bin > bins_) throw std::out_of_range("disperser table entry outside [1, M]");
    }
}

DisperserFamily DisperserFamily::random_table(std::uint64_t domain, std::uint32_t seeds, std::uint32_t bins,
                                              std::uint32_t min_entropy, double epsilon, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(1, bins);
    std::vector<std::uint32_t> table(domain * seeds);
    for (auto& bin : table) bin = pick(rng);
    return {domain, seeds, bins, min_entropy, epsilon, std::move(table)};
}

std::uint32_t explicit_level_count(std::uint32_t w) {
    return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::bit_width(w - 1)));
}

std::uint64_t power_of_two_domain(std::uint64_t n) { return std::bit_ceil(std::max<std::uint64_t>(n, 1)); }

std::vector<BinHash> sweep_stages(std::shared_ptr<const DisperserFamily> family) {
    std::vector<BinHash> stages;
    stages.reserve(family->seeds());
    for (std::uint32_t j = 1; j <= family->seeds(); ++j) {
        stages.push_back(BinHash::from_functions(
            family->bins(), [family, j](WorkerId worker) -> std::uint64_t { return family->eval(worker, j); },
            [family, j](TaskId task) -> std::uint64_t { return family->eval(task, j); }, {0, j, 0}));
    }
    return stages;
}

SetAssignResult assign_explicit_set(std::span<const std::shared_ptr<const DisperserFamily>> levels,
                                    std::uint32_t reps, std::uint32_t w, TaskId n,
                                    std::span<const WorkerId> workers, std::span<const TaskId> tasks) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    if (levels.size() != explicit_level_count(w)) {
        throw std::invalid_argument("expected " + std::to_string(explicit_level_count(w)) +
                                    " disperser levels, got " + std::to_string(levels.size()));
    }
    for (const auto& family : levels) {
        if (!family || family->domain() < std::max<std::uint64_t>(n, w)) {
            throw std::invalid_argument("disperser domain smaller than the task/worker universe");
        }
    }
    check_set_input(workers, tasks, w, n);

    std::vector<BinHash> stages;
    for (const auto& family : levels) {
        const auto sweep = sweep_stages(family);
        for (std::uint32_t r = 0; r < reps; ++r) stages.insert(stages.end(), sweep.begin(), sweep.end());
    }
    return complete_with_fallback(stages, make_input(workers, tasks));
}

AssignResult assign_explicit(std::span<const std::shared_ptr<const DisperserFamily>> levels, std::uint32_t reps,
                             std::uint32_t w, const TaskMultiset& tasks) {
    const TaskId n = lifted_universe(w, tasks.universe());
    return assign_via_lift(w, tasks.universe(), tasks,
                           [&](std::span<const WorkerId> ws, std::span<const TaskId> ts) {
                               return assign_explicit_set(levels, reps, w, n, ws, ts);
                           });
}

std::vector<std::shared_ptr<const DisperserFamily>> random_explicit_levels(std::uint32_t w, TaskId n,
                                                                           std::uint64_t seed) {
    const auto domain = power_of_two_domain(std::max<std::uint64_t>(w, n));
    const auto seeds = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::bit_width(domain) - 1));
    const auto levels = explicit_level_count(w);
    std::mt19937_64 rng(mix64(seed));
    std::vector<std::shared_ptr<const DisperserFamily>> out;
    for (std::uint32_t i = 1; i <= levels; ++i) {
        const std::uint32_t k = levels - i;
        out.push_back(std::make_shared<const DisperserFamily>(
            DisperserFamily::random_table(domain, seeds, std::uint32_t{1} << k, k, 0.25, rng)));
    }
    return out;
}

}  // namespace wta
