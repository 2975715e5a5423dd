#pragma once

// Multi-round balls-to-bins assignment and its disperser-driven variant.
//
// Outer round i (1..L, L = ceil(log_1.1 w)) uses k_i = max(1, ceil(w / 1.1^i))
// bins and repeats a fresh k_i-bin hash c * ceil(log2 n) times, n = w * t.
// Multisets are lifted to sets over [n] first and the result projected back.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "wta/binhash.hpp"
#include "wta/core.hpp"

namespace wta {

inline constexpr std::uint32_t kDefaultRepetitionConstant = 4;

/// Smallest L >= 1 with 1.1^L >= w.
std::uint32_t outer_round_count(std::uint32_t w);
/// max(1, ceil(w / 1.1^i)).
std::uint64_t bins_for_round(std::uint32_t w, std::uint32_t i);
/// max(1, c * ceil(log2 n)).
std::uint32_t repetitions_per_round(std::uint32_t c, TaskId n);

class RoundSchedule {
public:
    struct Round {
        std::uint32_t outer{0};
        std::uint32_t inner{0};
        std::uint64_t bins{0};
    };

    static RoundSchedule build(std::uint32_t w, TaskId t, std::uint32_t c, std::uint64_t master_seed);

    [[nodiscard]] std::uint32_t w() const noexcept { return w_; }
    [[nodiscard]] TaskId t() const noexcept { return t_; }
    [[nodiscard]] TaskId n() const noexcept { return static_cast<TaskId>(w_) * t_; }
    [[nodiscard]] std::uint32_t c() const noexcept { return c_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint32_t outer_rounds() const noexcept { return outer_; }
    [[nodiscard]] std::uint32_t repetitions() const noexcept { return reps_; }
    /// R = outer_rounds() * repetitions().
    [[nodiscard]] std::size_t total_rounds() const noexcept { return stages_.size(); }
    [[nodiscard]] std::span<const BinHash> stages() const noexcept { return stages_; }
    [[nodiscard]] Round round(std::size_t index) const;

private:
    std::uint32_t w_{0};
    TaskId t_{0};
    std::uint32_t c_{0};
    std::uint64_t seed_{0};
    std::uint32_t outer_{0};
    std::uint32_t reps_{0};
    std::vector<BinHash> stages_;
};

struct SetAssignResult {
    PartialAssignment matching;  // perfect matching W -> T, sorted by worker
    std::size_t fallback_pairs{0};
    std::vector<std::size_t> per_round_matches;
};

struct AssignResult {
    Assignment assignment;
    std::size_t fallback_pairs{0};
    std::vector<std::size_t> per_round_matches;
};

/// Runs every stage, then pairs any leftover workers and tasks in rank order
/// (sorted residual workers to sorted residual tasks). fallback_pairs counts
/// those pairs; when it is non-zero the switching bound no longer applies.
SetAssignResult complete_with_fallback(std::span<const BinHash> stages, const WorkerTaskInput& input);

/// Requires |W| == |T|, W within [w] and T within [n].
SetAssignResult assign_set(const RoundSchedule& schedule, std::span<const WorkerId> workers,
                           std::span<const TaskId> tasks);

/// Workers 1..|T| are assigned; |T| <= w and T must be over [t].
AssignResult assign(const RoundSchedule& schedule, const TaskMultiset& tasks);

/// Per-round symmetric difference of the matchings made on lift(a) and
/// lift(b) (workers 1..|a| and 1..|b|), as (round index, difference) for
/// the rounds where it is non-zero.
std::vector<std::pair<std::size_t, std::size_t>> round_switches(const RoundSchedule& schedule, const TaskMultiset& a,
                                                                const TaskMultiset& b);

/// Disp : [N] x [D] -> [M] given as a table. Elements, seeds and bins are
/// 1-based. `min_entropy` (k) and `epsilon` record the claimed dispersion:
/// every S of size >= 2^k covers at least (1 - epsilon) * M * D of the
/// (bin, seed) pairs. The claim is not checked here (see verify_disperser).
class DisperserFamily {
public:
    DisperserFamily(std::uint64_t domain, std::uint32_t seeds, std::uint32_t bins, std::uint32_t min_entropy,
                    double epsilon, std::vector<std::uint32_t> table);

    /// Independent uniform bins for every (element, seed).
    static DisperserFamily random_table(std::uint64_t domain, std::uint32_t seeds, std::uint32_t bins,
                                        std::uint32_t min_entropy, double epsilon, std::mt19937_64& rng);

    [[nodiscard]] std::uint64_t domain() const noexcept { return domain_; }
    [[nodiscard]] std::uint32_t seeds() const noexcept { return seeds_; }
    [[nodiscard]] std::uint32_t bins() const noexcept { return bins_; }
    [[nodiscard]] std::uint32_t min_entropy() const noexcept { return min_entropy_; }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
    [[nodiscard]] const std::vector<std::uint32_t>& table() const noexcept { return table_; }

    [[nodiscard]] std::uint32_t eval(std::uint64_t element, std::uint32_t seed) const {
        return table_[(element - 1) * seeds_ + (seed - 1)];
    }

private:
    std::uint64_t domain_;
    std::uint32_t seeds_;
    std::uint32_t bins_;
    std::uint32_t min_entropy_;
    double epsilon_;
    std::vector<std::uint32_t> table_;
};

/// Number of levels of the explicit variant: max(1, ceil(log2 w)). Level i
/// (1-based) targets min-entropy k_i = levels - i.
std::uint32_t explicit_level_count(std::uint32_t w);

/// Smallest power of two >= n.
std::uint64_t power_of_two_domain(std::uint64_t n);

/// One seed sweep: stage j bins every worker and task by eval(., j), j = 1..D.
std::vector<BinHash> sweep_stages(std::shared_ptr<const DisperserFamily> family);

/// Per level, `reps` consecutive sweeps of that level's family, followed by
/// the same rank-order fallback as assign_set. One family per level, each
/// with domain covering both [w] and the tasks.
SetAssignResult assign_explicit_set(std::span<const std::shared_ptr<const DisperserFamily>> levels,
                                    std::uint32_t reps, std::uint32_t w, TaskId n,
                                    std::span<const WorkerId> workers, std::span<const TaskId> tasks);

AssignResult assign_explicit(std::span<const std::shared_ptr<const DisperserFamily>> levels, std::uint32_t reps,
                             std::uint32_t w, const TaskMultiset& tasks);

/// Random-table families for every level: N = power_of_two_domain(max(w, n)),
/// M_i = 2^{k_i}, D = max(1, log2 N). Unverified; used when no certified
/// disperser is at hand.
std::vector<std::shared_ptr<const DisperserFamily>> random_explicit_levels(std::uint32_t w, TaskId n,
                                                                           std::uint64_t seed);

}  // namespace wta
