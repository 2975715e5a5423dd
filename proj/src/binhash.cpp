#include "wta/binhash.hpp"

#include <algorithm>
#include <stdexcept>

namespace wta {

namespace {

std::uint64_t seeded_bin(std::uint64_t key, HashDomain domain, std::uint64_t element, std::uint64_t k) {
    const auto tag = static_cast<std::uint64_t>(domain);
    return mix64(key ^ mix64(tag * 0x100000001b3ULL + element)) % k + 1;
}

std::uint64_t checked_bin(std::uint64_t bin, std::uint64_t k) {
    if (bin < 1 || bin > k) throw std::out_of_range("bin function left [1, k]");
    return bin;
}

// Per-thread scratch indexed by bin; every touched slot is reset before return.
struct BinScratch {
    std::vector<WorkerId> min_worker;
    std::vector<TaskId> min_task;
    std::vector<std::uint64_t> touched;
    std::vector<std::uint64_t> worker_bins;

    void reserve(std::uint64_t k) {
        if (min_worker.size() < k) {
            min_worker.assign(k, 0);
            min_task.assign(k, 0);
        }
    }
};

thread_local BinScratch scratch;

template <typename T>
std::size_t sorted_difference_size(const std::vector<T>& a, const std::vector<T>& b) {
    std::size_t count = 0;
    std::size_t j = 0;
    for (const T& x : a) {
        while (j < b.size() && b[j] < x) ++j;
        if (j == b.size() || b[j] != x) ++count;
    }
    return count;
}

}  // namespace

WorkerTaskInput WorkerTaskInput::make(std::vector<WorkerId> workers, std::vector<TaskId> tasks) {
    std::sort(workers.begin(), workers.end());
    workers.erase(std::unique(workers.begin(), workers.end()), workers.end());
    std::sort(tasks.begin(), tasks.end());
    tasks.erase(std::unique(tasks.begin(), tasks.end()), tasks.end());
    return {std::move(workers), std::move(tasks)};
}

BinHash::BinHash(std::uint64_t k, Provenance provenance, std::variant<Seeded, Tables, Functions> source)
    : k_(k), provenance_(provenance), source_(std::move(source)) {
    if (k_ == 0) throw std::invalid_argument("bin count must be at least 1");
}

BinHash BinHash::seeded(std::uint64_t k, std::uint64_t master_seed, std::uint32_t round,
                        std::uint32_t repetition) {
    const std::uint64_t key = mix64(mix64(mix64(master_seed) ^ round) ^ repetition);
    return BinHash(k, {round, repetition, master_seed}, Seeded{key});
}

BinHash BinHash::from_tables(std::uint64_t k, std::unordered_map<WorkerId, std::uint64_t> worker_bins,
                             std::unordered_map<TaskId, std::uint64_t> task_bins) {
    for (const auto& [_, bin] : worker_bins) checked_bin(bin, k);
    for (const auto& [_, bin] : task_bins) checked_bin(bin, k);
    return BinHash(k, {}, Tables{std::make_shared<const decltype(worker_bins)>(std::move(worker_bins)),
                                 std::make_shared<const decltype(task_bins)>(std::move(task_bins))});
}

BinHash BinHash::from_functions(std::uint64_t k, WorkerBinFn worker_bin, TaskBinFn task_bin,
                                Provenance provenance) {
    return BinHash(k, provenance, Functions{std::move(worker_bin), std::move(task_bin)});
}

BinHash BinHash::from_functions(std::uint64_t k, WorkerBinFn worker_bin, TaskBinFn task_bin) {
    return from_functions(k, std::move(worker_bin), std::move(task_bin), Provenance{});
}

std::uint64_t BinHash::worker_bin(WorkerId worker) const {
    if (const auto* s = std::get_if<Seeded>(&source_)) {
        return seeded_bin(s->key, HashDomain::worker, worker, k_);
    }
    if (const auto* t = std::get_if<Tables>(&source_)) {
        auto it = t->workers->find(worker);
        if (it == t->workers->end()) throw std::out_of_range("worker outside bin table");
        return it->second;
    }
    return checked_bin(std::get<Functions>(source_).worker(worker), k_);
}

std::uint64_t BinHash::task_bin(TaskId task) const {
    if (const auto* s = std::get_if<Seeded>(&source_)) {
        return seeded_bin(s->key, HashDomain::task, task, k_);
    }
    if (const auto* t = std::get_if<Tables>(&source_)) {
        auto it = t->tasks->find(task);
        if (it == t->tasks->end()) throw std::out_of_range("task outside bin table");
        return it->second;
    }
    return checked_bin(std::get<Functions>(source_).task(task), k_);
}

StageOutcome apply(const BinHash& stage, const WorkerTaskInput& input) {
    auto& s = scratch;
    s.reserve(stage.bins());
    s.touched.clear();
    s.worker_bins.resize(input.workers.size());

    // Inputs are sorted, so the first arrival in a bin is its minimum.
    for (std::size_t i = 0; i < input.workers.size(); ++i) {
        const auto bin = stage.worker_bin(input.workers[i]) - 1;
        s.worker_bins[i] = bin;
        if (s.min_worker[bin] == 0) {
            s.min_worker[bin] = input.workers[i];
            s.touched.push_back(bin);
        }
    }

    StageOutcome out;
    out.residual.tasks.reserve(input.tasks.size());
    for (TaskId task : input.tasks) {
        const auto bin = stage.task_bin(task) - 1;
        if (s.min_worker[bin] != 0 && s.min_task[bin] == 0) {
            s.min_task[bin] = task;
            out.matched.push_back({s.min_worker[bin], task});
        } else {
            out.residual.tasks.push_back(task);
        }
    }
    out.active_bins = out.matched.size();

    out.residual.workers.reserve(input.workers.size());
    for (std::size_t i = 0; i < input.workers.size(); ++i) {
        const auto bin = s.worker_bins[i];
        const bool matched = s.min_worker[bin] == input.workers[i] && s.min_task[bin] != 0;
        if (!matched) out.residual.workers.push_back(input.workers[i]);
    }

    for (auto bin : s.touched) {
        s.min_worker[bin] = 0;
        s.min_task[bin] = 0;
    }
    std::sort(out.matched.begin(), out.matched.end());
    return out;
}

std::size_t difference_score(const WorkerTaskInput& a, const WorkerTaskInput& b) {
    return sorted_difference_size(a.workers, b.workers) + sorted_difference_size(b.workers, a.workers) +
           sorted_difference_size(a.tasks, b.tasks) + sorted_difference_size(b.tasks, a.tasks);
}

Composition compose(std::span<const BinHash> stages, const WorkerTaskInput& input) {
    Composition out;
    out.residual = input;
    out.trace.reserve(stages.size());
    for (const auto& stage : stages) {
        auto outcome = apply(stage, out.residual);
        out.matched.insert(out.matched.end(), outcome.matched.begin(), outcome.matched.end());
        out.residual = outcome.residual;
        out.trace.push_back(std::move(outcome));
    }
    std::sort(out.matched.begin(), out.matched.end());
    return out;
}

CompositionCounts compose_counts(std::span<const BinHash> stages, const WorkerTaskInput& input) {
    CompositionCounts out;
    out.residual = input;
    out.per_stage.assign(stages.size(), 0);
    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (out.residual.workers.empty() || out.residual.tasks.empty()) break;
        auto outcome = apply(stages[i], out.residual);
        out.per_stage[i] = outcome.matched.size();
        out.matched.insert(out.matched.end(), outcome.matched.begin(), outcome.matched.end());
        out.residual = std::move(outcome.residual);
    }
    std::sort(out.matched.begin(), out.matched.end());
    return out;
}

std::vector<std::size_t> stagewise_difference(std::span<const BinHash> stages, const WorkerTaskInput& a,
                                              const WorkerTaskInput& b) {
    std::vector<std::size_t> out(stages.size(), 0);
    WorkerTaskInput left = a;
    WorkerTaskInput right = b;
    auto idle = [](const WorkerTaskInput& in) { return in.workers.empty() || in.tasks.empty(); };
    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (idle(left) && idle(right)) break;
        auto l = apply(stages[i], left);
        auto r = apply(stages[i], right);
        out[i] = symmetric_difference(l.matched, r.matched);
        left = std::move(l.residual);
        right = std::move(r.residual);
    }
    return out;
}

std::size_t symmetric_difference(const PartialAssignment& a, const PartialAssignment& b) {
    return sorted_difference_size(a, b) + sorted_difference_size(b, a);
}

}  // namespace wta
