#include "wta/embed.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wta {

namespace {

template <typename T>
T parse_number(std::string_view token, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(sep, pos);
        out.push_back(text.substr(pos, next == text.npos ? text.npos : next - pos));
        if (next == text.npos) return out;
        pos = next + 1;
    }
}

}  // namespace

SparseVector::SparseVector(TaskId n, Mode mode, std::vector<Entry> entries)
    : n_(n), mode_(mode), entries_(std::move(entries)) {
    std::uint64_t weight = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.position < 1 || e.position > n_) throw std::out_of_range("position outside [1, n]");
        if (e.value == 0) throw std::invalid_argument("entries must be positive");
        if (mode_ == Mode::binary && e.value != 1) throw std::invalid_argument("binary entries must be 1");
        if (i > 0 && entries_[i - 1].position >= e.position) {
            throw std::invalid_argument("positions must be strictly increasing");
        }
        weight += e.value;
    }
    if (weight > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("weight too large");
    weight_ = static_cast<std::uint32_t>(weight);
}

SparseVector SparseVector::binary(TaskId n, std::vector<TaskId> support) {
    std::vector<Entry> entries;
    entries.reserve(support.size());
    for (auto p : support) entries.push_back({p, 1});
    return SparseVector(n, Mode::binary, std::move(entries));
}

SparseVector SparseVector::l1(TaskId n, std::vector<Entry> entries) {
    return SparseVector(n, Mode::l1, std::move(entries));
}

SparseVector SparseVector::parse(std::string_view line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    const auto fields = split(line, ' ');
    if (fields.size() < 2 || fields.size() > 3) {
        throw std::invalid_argument("expected 'n k positions'");
    }
    const auto n = parse_number<TaskId>(fields[0], "dimension");
    const auto k = parse_number<std::uint32_t>(fields[1], "weight");
    const std::string_view body = fields.size() == 3 ? fields[2] : std::string_view{};

    SparseVector out = [&] {
        if (body.empty()) return binary(n, {});
        if (body.find(':') != body.npos) {
            std::vector<Entry> entries;
            for (auto token : split(body, ',')) {
                const auto colon = token.find(':');
                if (colon == token.npos) throw std::invalid_argument("expected position:value");
                entries.push_back({parse_number<TaskId>(token.substr(0, colon), "position"),
                                   parse_number<std::uint32_t>(token.substr(colon + 1), "value")});
            }
            return l1(n, std::move(entries));
        }
        std::vector<TaskId> support;
        for (auto token : split(body, ',')) support.push_back(parse_number<TaskId>(token, "position"));
        return binary(n, std::move(support));
    }();
    if (out.weight() != k) {
        throw std::invalid_argument("declared weight " + std::to_string(k) + " but support sums to " +
                                    std::to_string(out.weight()));
    }
    return out;
}

std::string SparseVector::to_string() const {
    std::ostringstream out;
    out << n_ << ' ' << weight_ << ' ';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i > 0) out << ',';
        out << entries_[i].position;
        if (mode_ == Mode::l1) out << ':' << entries_[i].value;
    }
    return out.str();
}

TaskMultiset SparseVector::support() const {
    std::vector<TaskMultiset::Run> runs;
    runs.reserve(entries_.size());
    for (const auto& e : entries_) runs.push_back({e.position, e.value});
    return TaskMultiset::from_runs(n_, std::move(runs));
}

EmbedResult embed_with_stats(const RoundSchedule& schedule, const SparseVector& x) {
    if (x.weight() != schedule.w()) {
        throw std::invalid_argument("vector weight " + std::to_string(x.weight()) + " != k = " +
                                    std::to_string(schedule.w()));
    }
    if (x.dimension() != schedule.t()) throw std::invalid_argument("vector dimension != schedule universe");
    auto result = assign(schedule, x.support());
    return {DenseCode{result.assignment.tasks()}, result.fallback_pairs};
}

DenseCode embed(const RoundSchedule& schedule, const SparseVector& x) {
    return embed_with_stats(schedule, x).code;
}

std::size_t hamming(const DenseCode& a, const DenseCode& b) {
    if (a.coords.size() != b.coords.size()) throw std::invalid_argument("codes differ in length");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) d += a.coords[i] != b.coords[i] ? 1 : 0;
    return d;
}

std::size_t hamming(const SparseVector& x, const SparseVector& y) {
    if (x.dimension() != y.dimension()) throw std::invalid_argument("vectors differ in dimension");
    if (x.mode() != y.mode()) throw std::invalid_argument("vectors differ in mode");
    // Both modes reduce to sum |x_i - y_i| over the merged supports.
    std::size_t d = 0;
    const auto& a = x.entries();
    const auto& b = y.entries();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].position < b[j].position)) {
            d += a[i++].value;
        } else if (i == a.size() || b[j].position < a[i].position) {
            d += b[j++].value;
        } else {
            d += a[i].value > b[j].value ? a[i].value - b[j].value : b[j].value - a[i].value;
            ++i;
            ++j;
        }
    }
    return d;
}

std::vector<TaskMultiset> adjacent_chain(const TaskMultiset& from, const TaskMultiset& to) {
    if (from.size() != to.size()) throw std::invalid_argument("chain endpoints differ in size");
    const auto surplus = multiset_difference(from, to).elements();
    const auto missing = multiset_difference(to, from).elements();
    std::vector<TaskMultiset> chain{from};
    for (std::size_t i = 0; i < surplus.size(); ++i) {
        chain.push_back(apply_step(chain.back(), {surplus[i], missing[i]}));
    }
    return chain;
}

DistortionReport distortion_audit(const RoundSchedule& schedule, std::span<const SparseVector> vectors,
                                  std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                  bool measure_chains) {
    DistortionReport report;
    report.structural_ceiling = 2.0 * static_cast<double>(schedule.total_rounds());

    std::vector<EmbedResult> codes;
    codes.reserve(vectors.size());
    for (const auto& v : vectors) {
        codes.push_back(embed_with_stats(schedule, v));
        if (codes.back().fallback_pairs > 0) ++report.fallback_vectors;
    }

    bool first = true;
    for (const auto& [i, j] : pairs) {
        if (i >= vectors.size() || j >= vectors.size()) throw std::out_of_range("pair index outside vector list");
        const auto source = hamming(vectors[i], vectors[j]);
        if (source == 0) {
            ++report.skipped;
            continue;
        }
        PairDistortion row;
        row.first = i;
        row.second = j;
        row.source_distance = source;
        row.code_distance = hamming(codes[i].code, codes[j].code);
        row.ratio = static_cast<double>(row.code_distance) / static_cast<double>(source);
        row.fallback_free = codes[i].fallback_pairs == 0 && codes[j].fallback_pairs == 0;

        if (measure_chains) {
            const auto chain = adjacent_chain(vectors[i].support(), vectors[j].support());
            row.chain_steps = chain.size() - 1;
            auto previous = assign(schedule, chain.front());
            for (std::size_t s = 1; s < chain.size(); ++s) {
                auto next = assign(schedule, chain[s]);
                const auto step = switching_cost(previous.assignment, next.assignment);
                row.chain_sum += step;
                row.chain_max_step = std::max(row.chain_max_step, step);
                row.fallback_free = row.fallback_free && next.fallback_pairs == 0 && previous.fallback_pairs == 0;
                previous = std::move(next);
            }
        }

        if (first || row.ratio < report.min_ratio) report.min_ratio = row.ratio;
        if (first || row.ratio > report.max_ratio) report.max_ratio = row.ratio;
        first = false;
        ++report.evaluated;
        report.pairs.push_back(row);
    }
    return report;
}

std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t count) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) out.emplace_back(i, j);
    }
    return out;
}

SparseVector random_binary_vector(TaskId n, std::uint32_t k, std::mt19937_64& rng) {
    if (k > n) throw std::invalid_argument("weight exceeds dimension");
    // Floyd's sampling of k distinct positions.
    std::vector<TaskId> chosen;
    for (TaskId j = n - k + 1; j <= n; ++j) {
        const TaskId r = std::uniform_int_distribution<TaskId>(1, j)(rng);
        chosen.push_back(std::find(chosen.begin(), chosen.end(), r) == chosen.end() ? r : j);
    }
    std::sort(chosen.begin(), chosen.end());
    return SparseVector::binary(n, std::move(chosen));
}

}  // namespace wta
