#pragma once

// The k-bin hash partial-assignment stage and stage composition.
//
// A stage hashes every remaining worker and task into one of k bins; in each
// bin that received at least one worker and one task, the smallest worker is
// matched to the smallest task. The hash functions are fixed when the stage
// is built, so the same stage makes similar matchings on similar inputs.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "wta/core.hpp"

namespace wta {

/// Remaining workers and tasks, both sorted and duplicate-free. Sizes may
/// differ: the stage is well defined either way.
struct WorkerTaskInput {
    std::vector<WorkerId> workers;
    std::vector<TaskId> tasks;

    /// Sorts and de-duplicates.
    static WorkerTaskInput make(std::vector<WorkerId> workers, std::vector<TaskId> tasks);

    [[nodiscard]] bool empty() const noexcept { return workers.empty() && tasks.empty(); }
    friend bool operator==(const WorkerTaskInput&, const WorkerTaskInput&) = default;
};

struct MatchedPair {
    WorkerId worker{0};
    TaskId task{0};

    friend auto operator<=>(const MatchedPair&, const MatchedPair&) = default;
};

/// Matched pairs sorted by worker. No worker or task appears twice.
using PartialAssignment = std::vector<MatchedPair>;

struct StageOutcome {
    PartialAssignment matched;
    WorkerTaskInput residual;
    std::size_t active_bins{0};
};

/// 64-bit finalizer (splitmix64).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

enum class HashDomain : std::uint64_t { worker = 0x5753ULL, task = 0x5453ULL };

/// A pair of bin functions h1 : workers -> [1, k], h2 : tasks -> [1, k].
class BinHash {
public:
    struct Provenance {
        std::uint32_t round{0};       // outer index i
        std::uint32_t repetition{0};  // inner index j
        std::uint64_t seed{0};
    };

    using WorkerBinFn = std::function<std::uint64_t(WorkerId)>;
    using TaskBinFn = std::function<std::uint64_t(TaskId)>;

    /// bin = mix(seed, round, repetition, domain, element) mod k, plus one.
    static BinHash seeded(std::uint64_t k, std::uint64_t master_seed, std::uint32_t round,
                          std::uint32_t repetition);
    /// Explicit tables with 1-based bins. Lookups outside the tables throw.
    static BinHash from_tables(std::uint64_t k, std::unordered_map<WorkerId, std::uint64_t> worker_bins,
                               std::unordered_map<TaskId, std::uint64_t> task_bins);
    /// Arbitrary bin functions returning values in [1, k].
    static BinHash from_functions(std::uint64_t k, WorkerBinFn worker_bin, TaskBinFn task_bin,
                                  Provenance provenance);
    static BinHash from_functions(std::uint64_t k, WorkerBinFn worker_bin, TaskBinFn task_bin);

    [[nodiscard]] std::uint64_t bins() const noexcept { return k_; }
    [[nodiscard]] const Provenance& provenance() const noexcept { return provenance_; }
    [[nodiscard]] std::uint64_t worker_bin(WorkerId worker) const;
    [[nodiscard]] std::uint64_t task_bin(TaskId task) const;

private:
    struct Seeded {
        std::uint64_t key;
    };
    struct Tables {
        std::shared_ptr<const std::unordered_map<WorkerId, std::uint64_t>> workers;
        std::shared_ptr<const std::unordered_map<TaskId, std::uint64_t>> tasks;
    };
    struct Functions {
        WorkerBinFn worker;
        TaskBinFn task;
    };

    BinHash(std::uint64_t k, Provenance provenance, std::variant<Seeded, Tables, Functions> source);

    std::uint64_t k_{1};
    Provenance provenance_;
    std::variant<Seeded, Tables, Functions> source_;
};

StageOutcome apply(const BinHash& stage, const WorkerTaskInput& input);

/// |W1\W2| + |W2\W1| + |T1\T2| + |T2\T1|.
std::size_t difference_score(const WorkerTaskInput& a, const WorkerTaskInput& b);

struct Composition {
    PartialAssignment matched;
    WorkerTaskInput residual;
    std::vector<StageOutcome> trace;
};

/// Runs the stages in order, each on the residual of the previous one.
Composition compose(std::span<const BinHash> stages, const WorkerTaskInput& input);

/// Same threading as compose, recording only how many pairs each stage
/// matched. Stages after the residual empties are not evaluated.
struct CompositionCounts {
    PartialAssignment matched;
    WorkerTaskInput residual;
    std::vector<std::size_t> per_stage;
};

CompositionCounts compose_counts(std::span<const BinHash> stages, const WorkerTaskInput& input);

/// Runs both inputs through the same stages side by side and returns, per
/// stage, the symmetric difference of the two stage matchings.
std::vector<std::size_t> stagewise_difference(std::span<const BinHash> stages, const WorkerTaskInput& a,
                                              const WorkerTaskInput& b);

/// |A xor B| for two partial assignments.
std::size_t symmetric_difference(const PartialAssignment& a, const PartialAssignment& b);

}  // namespace wta
