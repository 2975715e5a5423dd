#pragma once

// Exact and exhaustive checks for small instances:
//  - exact_feasible decides whether any assignment function reaches a given
//    switching cost (backtracking with forward checking);
//  - exhaustive_max_switching audits a concrete assignment function;
//  - verify_disperser / disperser_search handle tiny strong dispersers;
//  - ramsey_witness looks for w+1 tasks whose w-subsets share one colour.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "wta/assigner.hpp"
#include "wta/core.hpp"

namespace wta {

struct SearchBudget {
    std::uint64_t node_limit{1'000'000'000};
    std::chrono::duration<double> time_limit{600.0};
};

enum class Verdict { feasible, infeasible, budget_exhausted };

const char* to_string(Verdict verdict);

using AssignFn = std::function<Assignment(const TaskMultiset&)>;

/// Every size-w multiset (or set) over [t], in lexicographic order.
std::vector<TaskMultiset> enumerate_states(std::uint32_t w, TaskId t, bool sets_only);

struct FeasibilityResult {
    Verdict verdict{Verdict::budget_exhausted};
    std::uint64_t nodes{0};
    std::vector<TaskMultiset> states;
    std::vector<Assignment> solution;  // per state, when feasible
};

/// Largest instance the exact search accepts: w <= kExactMaxWorkers and at
/// most kExactMaxStates states.
inline constexpr std::uint32_t kExactMaxWorkers = 4;
inline constexpr std::size_t kExactMaxStates = 20000;

/// Does some assignment function on the size-w instance over [t] keep every
/// adjacent pair within `target` switches? Throws std::invalid_argument for
/// instances over the limits above.
FeasibilityResult exact_feasible(std::uint32_t w, TaskId t, std::size_t target, bool sets_only,
                                 const SearchBudget& budget = {});

struct OptimumResult {
    Verdict verdict{Verdict::budget_exhausted};
    std::size_t optimum{0};  // valid when verdict == feasible
    std::uint64_t nodes{0};
};

/// Smallest target for which exact_feasible succeeds.
OptimumResult optimal_switching_cost(std::uint32_t w, TaskId t, bool sets_only, const SearchBudget& budget = {});

struct MaxSwitching {
    std::size_t max_cost{0};
    std::optional<std::pair<TaskMultiset, TaskMultiset>> argmax;
    std::size_t pairs{0};
};

/// Exact maximum switching cost of `assign_fn` over every adjacent pair of
/// size-w states. Each state is evaluated once.
MaxSwitching exhaustive_max_switching(const AssignFn& assign_fn, std::uint32_t w, TaskId t, bool multisets);

/// Number of distinct (bin, seed) pairs hit by `subset` (1-based elements).
std::size_t disperser_coverage(const DisperserFamily& family, std::span<const std::uint64_t> subset);

/// ceil((1 - epsilon) * M * D).
std::size_t disperser_required_coverage(const DisperserFamily& family);

/// Exhaustive dispersion check. Coverage only grows with S, so every subset
/// of size exactly 2^k is checked; that is equivalent to checking all |S| >= 2^k.
/// Requires domain <= 32.
bool verify_disperser(const DisperserFamily& family);

/// Random restarts plus local repair over tables [N] x [D] -> [M]. The
/// returned family has passed verify_disperser.
std::optional<DisperserFamily> disperser_search(std::uint64_t domain, std::uint32_t seeds, std::uint32_t bins,
                                                std::uint32_t min_entropy, double epsilon,
                                                const SearchBudget& budget, std::uint64_t seed);

struct RamseyWitness {
    std::vector<TaskId> vertices;     // tau_1 < ... < tau_{w+1}
    std::vector<std::uint32_t> color;  // color[i-1] = pi(i): worker i holds tau_{pi(i)}
};

/// pi for the hyperedge `tasks` (a set of size w): worker i holds the
/// pi(i)-th smallest task.
std::vector<std::uint32_t> hyperedge_color(const Assignment& assignment, const TaskMultiset& tasks);

/// First (w+1)-subset of [t], in lexicographic order, whose w-subsets all get
/// the same colour.
std::optional<RamseyWitness> ramsey_witness(const AssignFn& assign_fn, std::uint32_t w, TaskId t);

}  // namespace wta
