#include "wta/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "wta/baselines.hpp"
#include "wta/embed.hpp"
#include "wta/oracle.hpp"
#include "wta/reduction.hpp"

namespace wta {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Usage errors detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kMaxAuditStates = 200000;
constexpr std::uint64_t kMaxRamseyCliques = 2000000;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ASSIGN_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("ASSIGN_SEED is not an integer: ") + env);
        }
    }
    return 1;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (std::uint64_t{1} << 50)) return r;
    }
    return r;
}

std::uint64_t state_count(std::uint32_t w, TaskId t, bool sets_only) {
    return sets_only ? binomial(t, w) : binomial(t + w - 1, w);
}

struct CommonOptions {
    std::uint32_t w{0};
    TaskId t{0};
    std::uint32_t c{kDefaultRepetitionConstant};
    std::uint64_t seed{0};
    std::string algorithm{"mrbb"};
};

void add_common(CLI::App& cmd, CommonOptions& o, bool with_algorithm = true) {
    cmd.add_option("--w", o.w, "worker count")->required()->check(CLI::PositiveNumber);
    cmd.add_option("--t", o.t, "task universe size")->required()->check(CLI::PositiveNumber);
    cmd.add_option("--c", o.c, "repetition constant")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--seed", o.seed, "master seed (default: ASSIGN_SEED or 1)");
    if (with_algorithm) {
        cmd.add_option("--alg", o.algorithm, "sorted | randperm | mrbb | explicit")
            ->capture_default_str()
            ->check(CLI::IsMember({"sorted", "randperm", "mrbb", "explicit"}));
    }
}

json record_line(const char* mode) { return json{{"mode", mode}}; }

int cmd_assign(const CommonOptions& o, const std::string& multiset_text, std::ostream& out) {
    const auto tasks = TaskMultiset::parse(multiset_text, o.t);
    if (tasks.size() > o.w) throw UsageError("multiset larger than w");
    const auto algorithm = make_algorithm(o.algorithm, o.w, o.t, o.c, o.seed);
    const auto result = algorithm.run(tasks);
    for (WorkerId worker = 1; worker <= o.w; ++worker) {
        out << "worker " << worker << " -> ";
        if (auto task = result.assignment.task_of(worker)) {
            out << "task " << *task << '\n';
        } else {
            out << "unassigned\n";
        }
    }
    out << "fallback " << (result.fallback_pairs > 0 ? "yes" : "no") << " (" << result.fallback_pairs
        << " pairs)\n";
    return kExitOk;
}

int cmd_walk(const CommonOptions& o, std::uint64_t steps, bool size_varying, std::ostream& out) {
    if (steps < 1) throw UsageError("steps must be >= 1");
    const auto algorithm = make_algorithm(o.algorithm, o.w, o.t, o.c, o.seed);
    std::mt19937_64 rng(mix64(o.seed ^ 0x77616c6bULL));
    const StepOptions options{size_varying, o.w};

    auto current = random_multiset(o.t, o.w, rng);
    auto current_result = algorithm.run(current);

    std::size_t max_cost = 0;
    double total_cost = 0.0;
    std::size_t fallback_count = 0;
    std::size_t bound_violations = 0;
    const std::size_t bound = 4 * algorithm.rounds;

    for (std::uint64_t step = 1; step <= steps; ++step) {
        const auto start = Clock::now();
        auto next = adjacent_step(current, rng, options);
        auto next_result = algorithm.run(next);

        ExperimentRecord record;
        record.experiment_id = "walk-" + std::to_string(o.seed) + "-" + std::to_string(step);
        record.seed = o.seed;
        record.w = o.w;
        record.t = o.t;
        record.c = o.c;
        record.algorithm = algorithm.name;
        record.pair = {current.to_string(), next.to_string()};
        record.switching_cost = switching_cost(current_result.assignment, next_result.assignment);
        if (algorithm.schedule) record.per_round_costs = round_switches(*algorithm.schedule, current, next);
        record.fallback_used = current_result.fallback_pairs > 0 || next_result.fallback_pairs > 0;
        record.wall_time_us = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count());

        max_cost = std::max(max_cost, record.switching_cost);
        total_cost += static_cast<double>(record.switching_cost);
        if (record.fallback_used) ++fallback_count;
        if (algorithm.schedule && !record.fallback_used && record.switching_cost > bound) ++bound_violations;
        out << json(record).dump() << '\n';

        current = std::move(next);
        current_result = std::move(next_result);
    }

    json summary{{"summary", true},
                 {"algorithm", algorithm.name},
                 {"seed", o.seed},
                 {"w", o.w},
                 {"t", o.t},
                 {"c", o.c},
                 {"steps", steps},
                 {"max_switching_cost", max_cost},
                 {"mean_switching_cost", total_cost / static_cast<double>(steps)},
                 {"fallback_count", fallback_count},
                 {"rounds", algorithm.rounds}};
    if (algorithm.schedule) {
        summary["structural_bound"] = bound;
        summary["bound_violations"] = bound_violations;
    }
    if (algorithm.name == "randperm") summary["expected_bound"] = random_permutation_expected_bound(o.w);
    out << summary.dump() << '\n';
    return bound_violations > 0 ? kExitViolation : kExitOk;
}

SearchBudget make_budget(std::uint64_t nodes, double seconds) {
    SearchBudget budget;
    budget.node_limit = nodes;
    budget.time_limit = std::chrono::duration<double>(seconds);
    return budget;
}

int cmd_oracle_exact(std::uint32_t w, TaskId t, std::size_t k, bool multisets, bool optimum,
                     const SearchBudget& budget, std::ostream& out) {
    if (w > kExactMaxWorkers) {
        throw UsageError("exact search supports w <= " + std::to_string(kExactMaxWorkers) + "; refusing w = " +
                         std::to_string(w));
    }
    if (const auto states = state_count(w, t, !multisets); states > kExactMaxStates) {
        throw UsageError("instance has " + std::to_string(states) + " states; exact search supports at most " +
                         std::to_string(kExactMaxStates));
    }
    auto line = record_line("exact");
    line["w"] = w;
    line["t"] = t;
    line["sets_only"] = !multisets;
    Verdict verdict;
    if (optimum) {
        const auto result = optimal_switching_cost(w, t, !multisets, budget);
        verdict = result.verdict;
        line["nodes"] = result.nodes;
        if (verdict == Verdict::feasible) line["optimum"] = result.optimum;
        out << "verdict: " << to_string(verdict);
        if (verdict == Verdict::feasible) out << " (optimal switching cost " << result.optimum << ")";
        out << '\n';
    } else {
        const auto result = exact_feasible(w, t, k, !multisets, budget);
        verdict = result.verdict;
        line["k"] = k;
        line["nodes"] = result.nodes;
        line["states"] = result.states.size();
        out << "verdict: " << to_string(verdict) << '\n';
    }
    line["verdict"] = to_string(verdict);
    out << line.dump() << '\n';
    return kExitOk;
}

int cmd_oracle_audit(const CommonOptions& o, bool sets_only, std::ostream& out) {
    if (const auto states = state_count(o.w, o.t, sets_only); states > kMaxAuditStates) {
        throw UsageError("instance has " + std::to_string(states) + " states; audit supports at most " +
                         std::to_string(kMaxAuditStates));
    }
    const auto algorithm = make_algorithm(o.algorithm, o.w, o.t, o.c, o.seed);
    std::size_t fallbacks = 0;
    const auto result = exhaustive_max_switching(
        [&](const TaskMultiset& tasks) {
            auto r = algorithm.run(tasks);
            if (r.fallback_pairs > 0) ++fallbacks;
            return r.assignment;
        },
        o.w, o.t, !sets_only);

    auto line = record_line("audit");
    line["algorithm"] = algorithm.name;
    line["w"] = o.w;
    line["t"] = o.t;
    line["c"] = o.c;
    line["seed"] = o.seed;
    line["sets_only"] = sets_only;
    line["pairs"] = result.pairs;
    line["max_switching_cost"] = result.max_cost;
    line["fallback_states"] = fallbacks;
    line["rounds"] = algorithm.rounds;
    if (result.argmax) line["argmax"] = {result.argmax->first.to_string(), result.argmax->second.to_string()};
    out << "max switching cost: " << result.max_cost;
    if (result.argmax) {
        out << " between {" << result.argmax->first.to_string() << "} and {" << result.argmax->second.to_string()
            << "}";
    }
    out << '\n' << line.dump() << '\n';
    return kExitOk;
}

int cmd_oracle_ramsey(const CommonOptions& o, std::ostream& out) {
    if (binomial(o.t, o.w + 1) > kMaxRamseyCliques) {
        throw UsageError("C(t, w+1) exceeds " + std::to_string(kMaxRamseyCliques) + "; refusing to scan");
    }
    const auto algorithm = make_algorithm(o.algorithm, o.w, o.t, o.c, o.seed);
    auto fn = [&](const TaskMultiset& tasks) { return algorithm.run(tasks).assignment; };
    const auto witness = ramsey_witness(fn, o.w, o.t);

    auto line = record_line("ramsey");
    line["algorithm"] = algorithm.name;
    line["w"] = o.w;
    line["t"] = o.t;
    line["seed"] = o.seed;
    if (!witness) {
        out << "verdict: none\n";
        line["verdict"] = "none";
        out << line.dump() << '\n';
        return kExitOk;
    }
    const auto& v = witness->vertices;
    const auto low = TaskMultiset::from_elements(o.t, std::vector<TaskId>(v.begin(), v.end() - 1));
    const auto high = TaskMultiset::from_elements(o.t, std::vector<TaskId>(v.begin() + 1, v.end()));
    const auto cost = switching_cost(fn(low), fn(high));
    out << "verdict: witness\n";
    out << "vertices:";
    for (auto x : v) out << ' ' << x;
    out << "\ncolor:";
    for (auto x : witness->color) out << ' ' << x;
    out << "\nswitching cost between {" << low.to_string() << "} and {" << high.to_string() << "}: " << cost
        << '\n';
    line["verdict"] = "witness";
    line["vertices"] = v;
    line["color"] = witness->color;
    line["extreme_switching_cost"] = cost;
    out << line.dump() << '\n';
    return cost == o.w ? kExitOk : kExitViolation;
}

int cmd_oracle_disperser(std::uint64_t domain, std::uint32_t seeds, std::uint32_t bins, std::uint32_t k,
                         double epsilon, std::uint64_t seed, const SearchBudget& budget, std::ostream& out) {
    if (domain > 32) throw UsageError("disperser search supports N <= 32");
    if (bins > 64) throw UsageError("disperser search supports M <= 64");
    const auto found = disperser_search(domain, seeds, bins, k, epsilon, budget, seed);
    auto line = record_line("disperser");
    line["N"] = domain;
    line["D"] = seeds;
    line["M"] = bins;
    line["k"] = k;
    line["epsilon"] = epsilon;
    line["seed"] = seed;
    if (found) {
        out << "verdict: found\n";
        line["verdict"] = "found";
        line["table"] = found->table();
    } else {
        out << "verdict: none\n";
        line["verdict"] = "none";
    }
    out << line.dump() << '\n';
    return kExitOk;
}

int cmd_embed(std::uint32_t k, TaskId n, std::uint32_t c, std::uint64_t seed, const std::string& input,
              std::size_t random_count, const std::string& pairing, bool chains, std::ostream& out) {
    std::vector<SparseVector> vectors;
    if (!input.empty()) {
        std::ifstream file(input);
        if (!file) throw UsageError("cannot open " + input);
        std::string line;
        std::size_t number = 0;
        while (std::getline(file, line)) {
            ++number;
            if (line.empty() || line[0] == '#') continue;
            try {
                vectors.push_back(SparseVector::parse(line));
            } catch (const std::exception& e) {
                throw UsageError(input + ":" + std::to_string(number) + ": " + e.what());
            }
            if (vectors.back().weight() != k || vectors.back().dimension() != n) {
                throw UsageError(input + ":" + std::to_string(number) + ": expected n = " + std::to_string(n) +
                                 " and weight k = " + std::to_string(k));
            }
        }
    } else {
        std::mt19937_64 rng(mix64(seed ^ 0x656d6264ULL));
        for (std::size_t i = 0; i < random_count; ++i) vectors.push_back(random_binary_vector(n, k, rng));
    }

    const auto schedule = RoundSchedule::build(k, n, c, seed);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const auto embedded = embed_with_stats(schedule, vectors[i]);
        out << json{{"type", "code"},
                    {"index", i},
                    {"vector", vectors[i].to_string()},
                    {"code", embedded.code.coords},
                    {"fallback_pairs", embedded.fallback_pairs}}
                   .dump()
            << '\n';
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (pairing == "all") {
        pairs = all_pairs(vectors.size());
    } else {
        for (std::size_t i = 0; i + 1 < vectors.size(); i += 2) pairs.emplace_back(i, i + 1);
    }
    const auto report = distortion_audit(schedule, vectors, pairs, chains);

    const std::size_t step_bound = 4 * schedule.total_rounds();
    std::size_t chain_violations = 0;
    for (const auto& row : report.pairs) {
        bool ok = true;
        if (chains) {
            ok = row.code_distance <= row.chain_sum &&
                 (!row.fallback_free || row.chain_max_step <= step_bound);
        }
        if (!ok) ++chain_violations;
        out << json{{"type", "pair"},
                    {"i", row.first},
                    {"j", row.second},
                    {"source_distance", row.source_distance},
                    {"code_distance", row.code_distance},
                    {"ratio", row.ratio},
                    {"chain_steps", row.chain_steps},
                    {"chain_sum", row.chain_sum},
                    {"chain_max_step", row.chain_max_step},
                    {"fallback_free", row.fallback_free}}
                   .dump()
            << '\n';
    }

    if (report.evaluated == 0) {
        out << "no distinct pairs\n";
        return kExitOk;
    }
    out << json{{"type", "summary"},
                {"k", k},
                {"n", n},
                {"c", c},
                {"seed", seed},
                {"evaluated", report.evaluated},
                {"skipped", report.skipped},
                {"min_ratio", report.min_ratio},
                {"max_ratio", report.max_ratio},
                {"structural_ceiling", report.structural_ceiling},
                {"fallback_vectors", report.fallback_vectors},
                {"chain_violations", chain_violations}}
               .dump()
        << '\n';
    return (report.min_ratio < 0.5 || chain_violations > 0) ? kExitViolation : kExitOk;
}

}  // namespace

void to_json(nlohmann::json& j, const ExperimentRecord& r) {
    json rounds = json::array();
    for (const auto& [round, cost] : r.per_round_costs) rounds.push_back({round, cost});
    j = json{{"experiment_id", r.experiment_id},
             {"seed", r.seed},
             {"w", r.w},
             {"t", r.t},
             {"c", r.c},
             {"algorithm", r.algorithm},
             {"pair", {r.pair.first, r.pair.second}},
             {"switching_cost", r.switching_cost},
             {"per_round_costs", rounds},
             {"fallback_used", r.fallback_used},
             {"wall_time_us", r.wall_time_us}};
}

void from_json(const nlohmann::json& j, ExperimentRecord& r) {
    j.at("experiment_id").get_to(r.experiment_id);
    j.at("seed").get_to(r.seed);
    j.at("w").get_to(r.w);
    j.at("t").get_to(r.t);
    j.at("c").get_to(r.c);
    j.at("algorithm").get_to(r.algorithm);
    r.pair = {j.at("pair").at(0).get<std::string>(), j.at("pair").at(1).get<std::string>()};
    j.at("switching_cost").get_to(r.switching_cost);
    r.per_round_costs.clear();
    for (const auto& entry : j.at("per_round_costs")) {
        r.per_round_costs.emplace_back(entry.at(0).get<std::size_t>(), entry.at(1).get<std::size_t>());
    }
    j.at("fallback_used").get_to(r.fallback_used);
    j.at("wall_time_us").get_to(r.wall_time_us);
}

Algorithm make_algorithm(const std::string& name, std::uint32_t w, TaskId t, std::uint32_t c, std::uint64_t seed) {
    Algorithm a;
    a.name = name;
    if (name == "sorted") {
        a.run = [w](const TaskMultiset& tasks) { return AssignResult{sorted_order(tasks, w), 0, {}}; };
    } else if (name == "randperm") {
        a.run = [w, oracle = PriorityOracle(seed)](const TaskMultiset& tasks) {
            return AssignResult{random_permutation_assign(oracle, tasks, w), 0, {}};
        };
    } else if (name == "mrbb") {
        a.schedule = RoundSchedule::build(w, t, c, seed);
        a.rounds = a.schedule->total_rounds();
        a.run = [schedule = *a.schedule](const TaskMultiset& tasks) { return assign(schedule, tasks); };
    } else if (name == "explicit") {
        auto levels = random_explicit_levels(w, lifted_universe(w, t), seed);
        for (const auto& family : levels) a.rounds += static_cast<std::size_t>(family->seeds()) * c;
        a.run = [levels = std::move(levels), c, w](const TaskMultiset& tasks) {
            return assign_explicit(levels, c, w, tasks);
        };
    } else {
        throw std::invalid_argument("unknown algorithm '" + name + "'");
    }
    return a;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Memoryless worker-task assignment with low switching cost"};
    app.require_subcommand(1);

    CommonOptions assign_opts;
    std::string multiset_text;
    auto* assign_cmd = app.add_subcommand("assign", "print the assignment of one task multiset");
    add_common(*assign_cmd, assign_opts);
    assign_cmd->add_option("--multiset", multiset_text, "comma-separated non-decreasing task ids")->required();

    CommonOptions walk_opts;
    std::uint64_t steps = 1000;
    bool size_varying = false;
    auto* walk_cmd = app.add_subcommand("walk", "random adjacent walk, one JSONL record per step");
    add_common(*walk_cmd, walk_opts);
    walk_cmd->add_option("--steps", steps, "number of steps")->capture_default_str();
    walk_cmd->add_flag("--size-varying", size_varying, "also insert or remove single tasks");

    auto* oracle_cmd = app.add_subcommand("oracle", "exact and exhaustive checks on small instances");
    oracle_cmd->require_subcommand(1);

    std::uint32_t exact_w = 0;
    TaskId exact_t = 0;
    std::size_t exact_k = 0;
    bool exact_multisets = false;
    bool exact_sets_only = false;
    bool exact_optimum = false;
    std::uint64_t node_limit = 1'000'000'000;
    double time_limit = 600.0;
    auto* exact_cmd = oracle_cmd->add_subcommand("exact", "is switching cost <= k achievable?");
    exact_cmd->add_option("--w", exact_w)->required()->check(CLI::PositiveNumber);
    exact_cmd->add_option("--t", exact_t)->required()->check(CLI::PositiveNumber);
    auto* k_opt = exact_cmd->add_option("--k", exact_k, "target switching cost");
    exact_cmd->add_flag("--sets-only", exact_sets_only, "search over task sets (default)");
    exact_cmd->add_flag("--multisets", exact_multisets, "search over task multisets");
    exact_cmd->add_flag("--optimum", exact_optimum, "find the smallest feasible k instead");
    exact_cmd->add_option("--node-limit", node_limit)->capture_default_str();
    exact_cmd->add_option("--time-limit", time_limit, "seconds")->capture_default_str();

    CommonOptions audit_opts;
    bool audit_sets_only = false;
    auto* audit_cmd = oracle_cmd->add_subcommand("audit", "exact max switching cost of an algorithm");
    add_common(*audit_cmd, audit_opts);
    audit_cmd->add_flag("--sets-only", audit_sets_only, "restrict to task sets");

    CommonOptions ramsey_opts;
    auto* ramsey_cmd = oracle_cmd->add_subcommand("ramsey", "search for a monochromatic (w+1)-clique");
    add_common(*ramsey_cmd, ramsey_opts);

    std::uint64_t disp_n = 16;
    std::uint32_t disp_d = 2;
    std::uint32_t disp_m = 4;
    std::uint32_t disp_k = 3;
    double disp_eps = 0.25;
    std::optional<std::uint64_t> disp_seed;
    std::uint64_t disp_nodes = 1'000'000'000;
    double disp_time = 60.0;
    auto* disp_cmd = oracle_cmd->add_subcommand("disperser", "brute-force search for a small strong disperser");
    disp_cmd->add_option("--N", disp_n, "domain size")->capture_default_str();
    disp_cmd->add_option("--D", disp_d, "seed count")->capture_default_str();
    disp_cmd->add_option("--M", disp_m, "bin count")->capture_default_str();
    disp_cmd->add_option("--k", disp_k, "min-entropy parameter")->capture_default_str();
    disp_cmd->add_option("--eps", disp_eps, "density slack")->capture_default_str();
    disp_cmd->add_option("--seed", disp_seed);
    disp_cmd->add_option("--node-limit", disp_nodes)->capture_default_str();
    disp_cmd->add_option("--time-limit", disp_time, "seconds")->capture_default_str();

    std::uint32_t embed_k = 0;
    TaskId embed_n = 0;
    std::uint32_t embed_c = kDefaultRepetitionConstant;
    std::optional<std::uint64_t> embed_seed;
    std::string embed_input;
    std::size_t embed_random = 0;
    std::string embed_pairs = "all";
    bool embed_no_chains = false;
    auto* embed_cmd = app.add_subcommand("embed", "embed weight-k vectors and audit distortion");
    embed_cmd->add_option("--k", embed_k, "vector weight")->required()->check(CLI::PositiveNumber);
    embed_cmd->add_option("--n", embed_n, "dimension")->required()->check(CLI::PositiveNumber);
    embed_cmd->add_option("--c", embed_c)->capture_default_str()->check(CLI::PositiveNumber);
    embed_cmd->add_option("--seed", embed_seed);
    auto* input_opt = embed_cmd->add_option("--input", embed_input, "file with one vector per line");
    auto* random_opt = embed_cmd->add_option("--random", embed_random, "generate this many random vectors");
    input_opt->excludes(random_opt);
    embed_cmd->add_option("--pairs", embed_pairs, "all | consecutive")
        ->capture_default_str()
        ->check(CLI::IsMember({"all", "consecutive"}));
    embed_cmd->add_flag("--no-chains", embed_no_chains, "skip the adjacent-chain measurement");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        auto resolve_seed = [](CLI::App* cmd, CommonOptions& o) {
            if (cmd->count("--seed") == 0) o.seed = default_seed();
        };
        if (*assign_cmd) {
            resolve_seed(assign_cmd, assign_opts);
            return cmd_assign(assign_opts, multiset_text, out);
        }
        if (*walk_cmd) {
            resolve_seed(walk_cmd, walk_opts);
            return cmd_walk(walk_opts, steps, size_varying, out);
        }
        if (*exact_cmd) {
            if (exact_multisets && exact_sets_only) throw UsageError("--sets-only and --multisets conflict");
            if (!exact_optimum && k_opt->count() == 0) throw UsageError("--k is required unless --optimum is given");
            return cmd_oracle_exact(exact_w, exact_t, exact_k, exact_multisets, exact_optimum,
                                    make_budget(node_limit, time_limit), out);
        }
        if (*audit_cmd) {
            resolve_seed(audit_cmd, audit_opts);
            return cmd_oracle_audit(audit_opts, audit_sets_only, out);
        }
        if (*ramsey_cmd) {
            resolve_seed(ramsey_cmd, ramsey_opts);
            return cmd_oracle_ramsey(ramsey_opts, out);
        }
        if (*disp_cmd) {
            return cmd_oracle_disperser(disp_n, disp_d, disp_m, disp_k, disp_eps, disp_seed.value_or(default_seed()),
                                        make_budget(disp_nodes, disp_time), out);
        }
        if (*embed_cmd) {
            if (embed_input.empty() && embed_random == 0) throw UsageError("give --input or --random");
            return cmd_embed(embed_k, embed_n, embed_c, embed_seed.value_or(default_seed()), embed_input,
                             embed_random, embed_pairs, !embed_no_chains, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace wta
