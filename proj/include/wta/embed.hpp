#pragma once

// Densification: a weight-k vector over [n] is mapped to k coordinates over
// [n] by assigning workers 1..k to its support (a multiset in l1 mode);
// coordinate i is the task given to worker i.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wta/assigner.hpp"
#include "wta/core.hpp"

namespace wta {

class SparseVector {
public:
    enum class Mode { binary, l1 };

    struct Entry {
        TaskId position{0};  // 1-based
        std::uint32_t value{0};

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    /// 0/1 vector with the given (strictly increasing) support positions.
    static SparseVector binary(TaskId n, std::vector<TaskId> support);
    /// Non-negative integer vector; entries strictly increasing by position,
    /// values positive.
    static SparseVector l1(TaskId n, std::vector<Entry> entries);

    /// "n k p1,p2,...,pk" (binary) or "n k p1:v1,p2:v2,..." (l1). The weight
    /// field k must match the parsed support.
    static SparseVector parse(std::string_view line);
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] TaskId dimension() const noexcept { return n_; }
    [[nodiscard]] std::uint32_t weight() const noexcept { return weight_; }
    [[nodiscard]] Mode mode() const noexcept { return mode_; }
    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }

    /// T(x): each position with multiplicity equal to its value.
    [[nodiscard]] TaskMultiset support() const;

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    SparseVector(TaskId n, Mode mode, std::vector<Entry> entries);

    TaskId n_{0};
    Mode mode_{Mode::binary};
    std::uint32_t weight_{0};
    std::vector<Entry> entries_;
};

/// coords[i] is the task held by worker i + 1; coords always form T(x).
struct DenseCode {
    std::vector<TaskId> coords;

    friend bool operator==(const DenseCode&, const DenseCode&) = default;
};

struct EmbedResult {
    DenseCode code;
    std::size_t fallback_pairs{0};
};

/// Schedule must be built for w = k and t = n; x must have weight k.
EmbedResult embed_with_stats(const RoundSchedule& schedule, const SparseVector& x);
DenseCode embed(const RoundSchedule& schedule, const SparseVector& x);

/// Coordinates that disagree. Codes must have equal length.
std::size_t hamming(const DenseCode& a, const DenseCode& b);
/// Binary mode: size of the support symmetric difference. l1 mode: l1 distance.
std::size_t hamming(const SparseVector& x, const SparseVector& y);

/// d + 1 multisets from `from` to `to` (equal sizes), consecutive ones adjacent,
/// d = |from \ to|. Swaps the smallest surplus element of `from` for the
/// smallest missing one at each step.
std::vector<TaskMultiset> adjacent_chain(const TaskMultiset& from, const TaskMultiset& to);

struct PairDistortion {
    std::size_t first{0};
    std::size_t second{0};
    std::size_t source_distance{0};
    std::size_t code_distance{0};
    double ratio{0.0};
    // Walk along adjacent_chain(T(x), T(y)).
    std::size_t chain_steps{0};
    std::size_t chain_sum{0};
    std::size_t chain_max_step{0};
    bool fallback_free{true};
};

struct DistortionReport {
    double min_ratio{0.0};
    double max_ratio{0.0};
    std::size_t evaluated{0};
    std::size_t skipped{0};           // pairs with source distance 0
    std::size_t fallback_vectors{0};  // vectors whose embedding needed fallback
    double structural_ceiling{0.0};   // 2 * R
    std::vector<PairDistortion> pairs;
};

/// Ratios Ham(phi x, phi y) / Ham(x, y) over the given index pairs. When
/// `measure_chains` is set, every pair also walks its adjacent chain.
DistortionReport distortion_audit(const RoundSchedule& schedule, std::span<const SparseVector> vectors,
                                  std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                  bool measure_chains = true);

/// All i < j index pairs.
std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t count);

/// Uniform random weight-k support in [n] (binary mode).
SparseVector random_binary_vector(TaskId n, std::uint32_t k, std::mt19937_64& rng);

}  // namespace wta
