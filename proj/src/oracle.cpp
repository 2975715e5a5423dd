#include "wta/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

namespace wta {

namespace {

using Clock = std::chrono::steady_clock;

void enumerate_rec(std::uint32_t w, TaskId t, bool sets_only, TaskId next, std::vector<TaskId>& prefix,
                   std::vector<TaskMultiset>& out) {
    if (prefix.size() == w) {
        out.push_back(TaskMultiset::from_elements(t, prefix));
        return;
    }
    for (TaskId v = next; v <= t; ++v) {
        prefix.push_back(v);
        enumerate_rec(w, t, sets_only, sets_only ? v + 1 : v, prefix, out);
        prefix.pop_back();
    }
}

// Neighbour lists over the enumerated states (fixed size, one element swapped).
std::vector<std::vector<std::size_t>> adjacency(const std::vector<TaskMultiset>& states, bool sets_only) {
    std::map<std::vector<TaskId>, std::size_t> index;
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i].elements(), i);

    std::vector<std::vector<std::size_t>> out(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        for (const auto& run : s.runs()) {
            for (TaskId v = 1; v <= s.universe(); ++v) {
                if (v == run.task || (sets_only && s.multiplicity(v) > 0)) continue;
                auto next = apply_step(s, {run.task, v});
                auto it = index.find(next.elements());
                if (it != index.end()) out[i].push_back(it->second);
            }
        }
        std::sort(out[i].begin(), out[i].end());
        out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
    }
    return out;
}

std::vector<std::vector<TaskId>> distinct_permutations(const TaskMultiset& state) {
    std::vector<std::vector<TaskId>> out;
    auto perm = state.elements();
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

class ExactSearch {
public:
    ExactSearch(std::uint32_t w, TaskId t, std::size_t target, bool sets_only, const SearchBudget& budget)
        : w_(w), budget_(budget), start_(Clock::now()) {
        states_ = enumerate_states(w, t, sets_only);
        if (states_.size() > kExactMaxStates) {
            throw std::invalid_argument("instance has " + std::to_string(states_.size()) +
                                        " states; exact search is limited to " + std::to_string(kExactMaxStates));
        }
        neighbours_ = adjacency(states_, sets_only);
        values_.reserve(states_.size());
        for (const auto& s : states_) values_.push_back(distinct_permutations(s));

        // compat_[s][slot][a]: values of neighbour slot compatible with value a of s
        compat_.resize(states_.size());
        for (std::size_t s = 0; s < states_.size(); ++s) {
            compat_[s].resize(neighbours_[s].size());
            for (std::size_t slot = 0; slot < neighbours_[s].size(); ++slot) {
                const auto u = neighbours_[s][slot];
                auto& masks = compat_[s][slot];
                masks.assign(values_[s].size(), 0);
                for (std::size_t a = 0; a < values_[s].size(); ++a) {
                    const Assignment va(w, values_[s][a]);
                    for (std::size_t b = 0; b < values_[u].size(); ++b) {
                        if (switching_cost(va, Assignment(w, values_[u][b])) <= target) {
                            masks[a] |= std::uint64_t{1} << b;
                        }
                    }
                }
            }
        }

        // BFS order from the lexicographically smallest state.
        std::vector<bool> seen(states_.size(), false);
        for (std::size_t root = 0; root < states_.size(); ++root) {
            if (seen[root]) continue;
            std::deque<std::size_t> queue{root};
            seen[root] = true;
            while (!queue.empty()) {
                const auto s = queue.front();
                queue.pop_front();
                order_.push_back(s);
                for (auto u : neighbours_[s]) {
                    if (!seen[u]) {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }

        domain_.resize(states_.size());
        for (std::size_t s = 0; s < states_.size(); ++s) {
            const auto count = values_[s].size();
            domain_[s] = count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
        }
        // Relabelling workers is a symmetry: pin the first state to sorted order.
        if (!order_.empty()) domain_[order_.front()] = 1;
        assigned_.assign(states_.size(), -1);
    }

    FeasibilityResult run() {
        FeasibilityResult out;
        const bool found = dfs(0);
        out.nodes = nodes_;
        if (found) {
            out.verdict = Verdict::feasible;
            for (std::size_t s = 0; s < states_.size(); ++s) {
                out.solution.emplace_back(w_, values_[s][static_cast<std::size_t>(assigned_[s])]);
            }
        } else {
            out.verdict = exhausted_ ? Verdict::budget_exhausted : Verdict::infeasible;
        }
        out.states = std::move(states_);
        return out;
    }

private:
    bool out_of_budget() {
        if (nodes_ >= budget_.node_limit) return true;
        if ((nodes_ & 1023) == 0 && Clock::now() - start_ > budget_.time_limit) return true;
        return false;
    }

    bool dfs(std::size_t pos) {
        if (pos == order_.size()) return true;
        const auto s = order_[pos];
        for (std::uint64_t mask = domain_[s]; mask != 0; mask &= mask - 1) {
            if (out_of_budget()) {
                exhausted_ = true;
                return false;
            }
            ++nodes_;
            const auto a = static_cast<std::size_t>(std::countr_zero(mask));
            const auto mark = trail_.size();
            bool ok = true;
            for (std::size_t slot = 0; slot < neighbours_[s].size() && ok; ++slot) {
                const auto u = neighbours_[s][slot];
                if (assigned_[u] >= 0) continue;
                const auto narrowed = domain_[u] & compat_[s][slot][a];
                if (narrowed != domain_[u]) {
                    trail_.emplace_back(u, domain_[u]);
                    domain_[u] = narrowed;
                }
                ok = narrowed != 0;
            }
            if (ok) {
                assigned_[s] = static_cast<int>(a);
                if (dfs(pos + 1)) return true;
                assigned_[s] = -1;
            }
            while (trail_.size() > mark) {
                domain_[trail_.back().first] = trail_.back().second;
                trail_.pop_back();
            }
            if (exhausted_) return false;
        }
        return false;
    }

    std::uint32_t w_;
    SearchBudget budget_;
    Clock::time_point start_;
    std::vector<TaskMultiset> states_;
    std::vector<std::vector<std::size_t>> neighbours_;
    std::vector<std::vector<std::vector<TaskId>>> values_;
    std::vector<std::vector<std::vector<std::uint64_t>>> compat_;
    std::vector<std::size_t> order_;
    std::vector<std::uint64_t> domain_;
    std::vector<int> assigned_;
    std::vector<std::pair<std::size_t, std::uint64_t>> trail_;
    std::uint64_t nodes_{0};
    bool exhausted_{false};
};

std::uint64_t next_same_popcount(std::uint64_t x) {
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    return (((r ^ x) >> 2) / c) | r;
}

// Calls fn(mask) for every subset of [domain] of the given size; stops early
// when fn returns false.
template <typename Fn>
void for_each_subset(std::uint64_t domain, std::uint64_t size, Fn&& fn) {
    if (size > domain) return;
    if (size == 0) {
        fn(std::uint64_t{0});
        return;
    }
    const std::uint64_t limit = domain == 64 ? 0 : std::uint64_t{1} << domain;
    for (std::uint64_t mask = (size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1);;) {
        if (!fn(mask)) return;
        if (size == domain) return;
        mask = next_same_popcount(mask);
        if (mask >= limit) return;
    }
}

std::size_t mask_coverage(const DisperserFamily& family, std::uint64_t mask) {
    std::size_t covered = 0;
    for (std::uint32_t seed = 1; seed <= family.seeds(); ++seed) {
        std::uint64_t bins = 0;
        for (std::uint64_t m = mask; m != 0; m &= m - 1) {
            const auto element = static_cast<std::uint64_t>(std::countr_zero(m)) + 1;
            bins |= std::uint64_t{1} << (family.eval(element, seed) - 1);
        }
        covered += static_cast<std::size_t>(std::popcount(bins));
    }
    return covered;
}

void check_disperser_limits(std::uint64_t domain, std::uint32_t bins) {
    if (domain > 32) throw std::invalid_argument("exhaustive disperser checks need N <= 32");
    if (bins > 64) throw std::invalid_argument("exhaustive disperser checks need M <= 64");
}

}  // namespace

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::feasible:
            return "feasible";
        case Verdict::infeasible:
            return "infeasible";
        case Verdict::budget_exhausted:
            return "budget_exhausted";
    }
    return "unknown";
}

std::vector<TaskMultiset> enumerate_states(std::uint32_t w, TaskId t, bool sets_only) {
    std::vector<TaskMultiset> out;
    std::vector<TaskId> prefix;
    enumerate_rec(w, t, sets_only, 1, prefix, out);
    return out;
}

FeasibilityResult exact_feasible(std::uint32_t w, TaskId t, std::size_t target, bool sets_only,
                                 const SearchBudget& budget) {
    if (w < 1 || t < 1) throw std::invalid_argument("exact search needs w, t >= 1");
    if (w > kExactMaxWorkers) {
        throw std::invalid_argument("exact search is limited to w <= " + std::to_string(kExactMaxWorkers));
    }
    return ExactSearch(w, t, target, sets_only, budget).run();
}

OptimumResult optimal_switching_cost(std::uint32_t w, TaskId t, bool sets_only, const SearchBudget& budget) {
    OptimumResult out;
    for (std::size_t target = 0; target <= w; ++target) {
        auto result = exact_feasible(w, t, target, sets_only, budget);
        out.nodes += result.nodes;
        if (result.verdict == Verdict::budget_exhausted) {
            out.verdict = Verdict::budget_exhausted;
            return out;
        }
        if (result.verdict == Verdict::feasible) {
            out.verdict = Verdict::feasible;
            out.optimum = target;
            return out;
        }
    }
    return out;  // unreachable: target = w is always feasible
}

MaxSwitching exhaustive_max_switching(const AssignFn& assign_fn, std::uint32_t w, TaskId t, bool multisets) {
    const auto states = enumerate_states(w, t, !multisets);
    const auto neighbours = adjacency(states, !multisets);
    std::vector<Assignment> assigned;
    assigned.reserve(states.size());
    for (const auto& s : states) assigned.push_back(assign_fn(s));

    MaxSwitching out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (auto j : neighbours[i]) {
            if (j <= i) continue;
            ++out.pairs;
            const auto cost = switching_cost(assigned[i], assigned[j]);
            if (!out.argmax || cost > out.max_cost) {
                out.max_cost = cost;
                out.argmax = std::make_pair(states[i], states[j]);
            }
        }
    }
    return out;
}

std::size_t disperser_coverage(const DisperserFamily& family, std::span<const std::uint64_t> subset) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> hit;
    for (std::uint32_t seed = 1; seed <= family.seeds(); ++seed) {
        for (auto element : subset) hit.emplace_back(family.eval(element, seed), seed);
    }
    std::sort(hit.begin(), hit.end());
    return static_cast<std::size_t>(std::unique(hit.begin(), hit.end()) - hit.begin());
}

std::size_t disperser_required_coverage(const DisperserFamily& family) {
    const double need = (1.0 - family.epsilon()) * family.bins() * family.seeds();
    return static_cast<std::size_t>(std::ceil(need - 1e-9));
}

bool verify_disperser(const DisperserFamily& family) {
    check_disperser_limits(family.domain(), family.bins());
    if (family.min_entropy() >= 64) return true;
    const std::uint64_t size = std::uint64_t{1} << family.min_entropy();
    const auto need = disperser_required_coverage(family);
    bool ok = true;
    for_each_subset(family.domain(), size, [&](std::uint64_t mask) {
        ok = mask_coverage(family, mask) >= need;
        return ok;
    });
    return ok;
}

std::optional<DisperserFamily> disperser_search(std::uint64_t domain, std::uint32_t seeds, std::uint32_t bins,
                                                std::uint32_t min_entropy, double epsilon,
                                                const SearchBudget& budget, std::uint64_t seed) {
    check_disperser_limits(domain, bins);
    const auto start = Clock::now();
    std::mt19937_64 rng(seed);
    std::uint64_t nodes = 0;
    const std::uint64_t size = min_entropy >= 64 ? domain + 1 : std::uint64_t{1} << min_entropy;

    auto over_budget = [&] { return nodes >= budget.node_limit || Clock::now() - start > budget.time_limit; };

    // Total coverage deficit over all minimum-size subsets, plus one violating
    // subset picked uniformly (reservoir) to steer the next repair.
    auto score = [&](const DisperserFamily& f, std::uint64_t& witness) {
        const auto need = disperser_required_coverage(f);
        std::uint64_t deficit = 0;
        std::uint64_t violating = 0;
        for_each_subset(domain, size, [&](std::uint64_t mask) {
            ++nodes;
            const auto cov = mask_coverage(f, mask);
            if (cov < need) {
                deficit += need - cov;
                if (std::uniform_int_distribution<std::uint64_t>(0, violating++)(rng) == 0) witness = mask;
            }
            return true;
        });
        return deficit;
    };

    const std::size_t steps_per_restart = 400 * domain * seeds;
    std::uniform_int_distribution<std::uint32_t> pick_seed(1, seeds);
    std::uniform_int_distribution<std::uint32_t> pick_bin(1, bins);

    while (!over_budget()) {
        auto table = DisperserFamily::random_table(domain, seeds, bins, min_entropy, epsilon, rng).table();
        std::uint64_t witness = 0;
        auto current = score(DisperserFamily(domain, seeds, bins, min_entropy, epsilon, table), witness);
        for (std::size_t step = 0; step < steps_per_restart && current > 0 && !over_budget(); ++step) {
            // Re-bin one element of a violating subset under one seed.
            const auto members = static_cast<std::uint32_t>(std::popcount(witness));
            auto pick = std::uniform_int_distribution<std::uint32_t>(0, members - 1)(rng);
            std::uint64_t m = witness;
            while (pick-- > 0) m &= m - 1;
            const auto element = static_cast<std::uint64_t>(std::countr_zero(m)) + 1;
            const auto entry = (element - 1) * seeds + (pick_seed(rng) - 1);
            const auto old_bin = table[entry];
            table[entry] = pick_bin(rng);
            std::uint64_t next_witness = witness;
            const auto next = score(DisperserFamily(domain, seeds, bins, min_entropy, epsilon, table), next_witness);
            if (next <= current) {
                current = next;
                witness = next_witness;
            } else {
                table[entry] = old_bin;
            }
        }
        if (current == 0) {
            DisperserFamily found(domain, seeds, bins, min_entropy, epsilon, std::move(table));
            if (verify_disperser(found)) return found;
        }
    }
    return std::nullopt;
}

std::vector<std::uint32_t> hyperedge_color(const Assignment& assignment, const TaskMultiset& tasks) {
    if (!tasks.is_set()) throw std::invalid_argument("hyperedges are task sets");
    const auto sorted = tasks.elements();
    std::vector<std::uint32_t> color;
    color.reserve(assignment.assigned());
    for (TaskId task : assignment.tasks()) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), task);
        if (it == sorted.end() || *it != task) throw std::invalid_argument("assignment does not cover hyperedge");
        color.push_back(static_cast<std::uint32_t>(it - sorted.begin()) + 1);
    }
    return color;
}

std::optional<RamseyWitness> ramsey_witness(const AssignFn& assign_fn, std::uint32_t w, TaskId t) {
    std::map<std::vector<TaskId>, std::vector<std::uint32_t>> colors;
    auto color_of = [&](const std::vector<TaskId>& edge) -> const std::vector<std::uint32_t>& {
        auto it = colors.find(edge);
        if (it == colors.end()) {
            const auto tasks = TaskMultiset::from_elements(t, edge);
            it = colors.emplace(edge, hyperedge_color(assign_fn(tasks), tasks)).first;
        }
        return it->second;
    };

    for (const auto& clique : enumerate_states(w + 1, t, true)) {
        const auto vertices = clique.elements();
        std::vector<TaskId> edge(vertices.begin(), vertices.end() - 1);
        const auto first = color_of(edge);
        bool mono = true;
        for (std::size_t skip = 0; skip + 1 < vertices.size() && mono; ++skip) {
            edge.clear();
            for (std::size_t i = 0; i < vertices.size(); ++i) {
                if (i != skip) edge.push_back(vertices[i]);
            }
            mono = color_of(edge) == first;
        }
        if (mono) return RamseyWitness{vertices, first};
    }
    return std::nullopt;
}

}  // namespace wta
