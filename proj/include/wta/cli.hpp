#pragma once

// Command-line harness: assign, walk, oracle and embed subcommands writing
// JSONL experiment records.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wta/assigner.hpp"
#include "wta/core.hpp"

namespace wta {

/// One measured adjacent-pair transition.
struct ExperimentRecord {
    std::string experiment_id;
    std::uint64_t seed{0};
    std::uint32_t w{0};
    TaskId t{0};
    std::uint32_t c{0};
    std::string algorithm;
    std::pair<std::string, std::string> pair;  // multiset text format
    std::size_t switching_cost{0};
    // (round index, matched-pair difference) for rounds that differ; empty
    // for algorithms without rounds.
    std::vector<std::pair<std::size_t, std::size_t>> per_round_costs;
    bool fallback_used{false};
    std::uint64_t wall_time_us{0};  // not covered by the determinism contract

    friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

void to_json(nlohmann::json& j, const ExperimentRecord& r);
void from_json(const nlohmann::json& j, ExperimentRecord& r);

/// An assignment function with its bookkeeping, selected by name:
/// "sorted", "randperm", "mrbb" or "explicit".
struct Algorithm {
    std::string name;
    std::function<AssignResult(const TaskMultiset&)> run;
    std::optional<RoundSchedule> schedule;  // mrbb only
    std::size_t rounds{0};                  // stages per evaluation, 0 for baselines
};

Algorithm make_algorithm(const std::string& name, std::uint32_t w, TaskId t, std::uint32_t c, std::uint64_t seed);

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

/// Entry point shared by the executable and the tests. args[0] is the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wta
