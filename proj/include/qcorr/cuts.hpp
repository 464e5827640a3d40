// cuts.hpp
// Bipartite cuts, product tests, genuine multipartite correlation detection,
// correlation degree and product factorization.
#pragma once

#include "linops.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qcorr {

class Bipartition {
public:
    // Canonical form keeps party 0 on the left side.
    explicit Bipartition(std::size_t num_parties, std::uint64_t left_mask)
        : num_parties_(num_parties) {
        if (num_parties < 2 || num_parties > 63) {
            throw std::invalid_argument("bipartition needs between 2 and 63 parties");
        }
        const std::uint64_t full = (std::uint64_t{1} << num_parties) - 1;
        left_mask &= full;
        if (left_mask == 0 || left_mask == full) {
            throw std::invalid_argument("both sides of a bipartition must be nonempty");
        }
        if (!(left_mask & 1)) left_mask = full & ~left_mask;
        left_mask_ = left_mask;
    }

    std::size_t num_parties() const { return num_parties_; }
    std::uint64_t left_mask() const { return left_mask_; }
    bool on_left(std::size_t party) const { return (left_mask_ >> party) & 1; }

    std::vector<std::size_t> left_parties() const {
        std::vector<std::size_t> out;
        for (std::size_t p = 0; p < num_parties_; ++p) {
            if (on_left(p)) out.push_back(p);
        }
        return out;
    }

    std::vector<std::size_t> right_parties() const {
        std::vector<std::size_t> out;
        for (std::size_t p = 0; p < num_parties_; ++p) {
            if (!on_left(p)) out.push_back(p);
        }
        return out;
    }

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t p : left_parties()) {
            if (out.size() > 1) out += ",";
            out += std::to_string(p);
        }
        out += "}|{";
        bool first = true;
        for (std::size_t p : right_parties()) {
            if (!first) out += ",";
            out += std::to_string(p);
            first = false;
        }
        out += "}";
        return out;
    }

    friend bool operator==(const Bipartition& a, const Bipartition& b) {
        return a.num_parties_ == b.num_parties_ && a.left_mask_ == b.left_mask_;
    }

private:
    std::size_t num_parties_;
    std::uint64_t left_mask_;
};

inline std::vector<Bipartition> all_cuts(std::size_t num_parties) {
    std::vector<Bipartition> out;
    const std::uint64_t full = (std::uint64_t{1} << num_parties) - 1;
    for (std::uint64_t mask = 1; mask < full; mask += 2) {
        out.emplace_back(num_parties, mask);
    }
    return out;
}

// Trace distance from the state to the tensor product of its marginals on
// the two sides of the cut. The cut is given by the left-side positions.
inline double product_cut_distance(const QuantumState& s,
                                   const std::vector<std::size_t>& left_positions) {
    const auto left = detail::sorted_distinct(left_positions);
    const auto right = detail::complement_of(left, s.num_parties());
    if (left.empty() || right.empty()) {
        throw std::invalid_argument("both sides of a cut must be nonempty");
    }
    const QuantumState candidate =
        tensor_on_parties(partial_trace(s, left), partial_trace(s, right), left);
    return trace_distance(s, candidate);
}

inline bool is_product_between(const QuantumState& s, const std::vector<std::size_t>& left_positions,
                               double tolerance = product_cut_tolerance) {
    return product_cut_distance(s, left_positions) <= tolerance;
}

struct CutReport {
    Bipartition cut;
    double distance = 0.0;
    bool product = false;
};

inline std::vector<CutReport> analyze_cuts(const QuantumState& s,
                                           double tolerance = product_cut_tolerance) {
    std::vector<CutReport> out;
    for (const auto& cut : all_cuts(s.num_parties())) {
        const double d = product_cut_distance(s, cut.left_parties());
        out.push_back({cut, d, d <= tolerance});
    }
    return out;
}

// A state carries genuine correlations among all its parties exactly when no
// bipartite cut factorizes it.
inline bool has_genuine_correlations(const QuantumState& s,
                                     double tolerance = product_cut_tolerance) {
    if (s.num_parties() < 2) return false;
    for (const auto& cut : all_cuts(s.num_parties())) {
        if (product_cut_distance(s, cut.left_parties()) <= tolerance) return false;
    }
    return true;
}

namespace detail {

// Visits k-subsets of {0..n-1} in lexicographic order; stops early when the
// visitor returns true.
inline bool for_each_subset(std::size_t n, std::size_t k,
                            const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (visit(idx)) return true;
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) break;
            if (i == 0) return false;
        }
        if (idx[i] == i + n - k) return false;
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

// Largest m such that some m-party marginal carries genuine m-party
// correlations; 1 when even all pairs factorize.
inline std::size_t degree_of_correlations(const QuantumState& s,
                                          double tolerance = product_cut_tolerance) {
    const std::size_t n = s.num_parties();
    if (n > 10 && s.is_dense()) {
        throw size_limit_error("degree scan over dense states is limited to 10 parties");
    }
    if (n < 2) return std::min<std::size_t>(n, 1);
    if (has_genuine_correlations(s, tolerance)) return n;
    for (std::size_t m = n - 1; m >= 2; --m) {
        bool found = false;
        detail::for_each_subset(n, m, [&](const std::vector<std::size_t>& subset) {
            if (has_genuine_correlations(partial_trace(s, subset), tolerance)) {
                found = true;
                return true;
            }
            return false;
        });
        if (found) return m;
    }
    return 1;
}

struct Factor {
    std::vector<std::size_t> parties;
    QuantumState state;
};

struct FactorizationResult {
    std::vector<Factor> factors;
    bool genuinely_correlated = false;
};

// Greedy factorization: repeatedly splits off the lexicographically first,
// smallest subset that is in a product with the rest.
inline FactorizationResult factorize(const QuantumState& s,
                                     double tolerance = product_cut_tolerance) {
    FactorizationResult result;
    std::vector<std::size_t> current(s.num_parties());
    for (std::size_t p = 0; p < current.size(); ++p) current[p] = p;
    QuantumState rest = s;

    while (current.size() >= 2) {
        std::optional<std::vector<std::size_t>> split;
        for (std::size_t k = 1; k < current.size() && !split; ++k) {
            detail::for_each_subset(current.size(), k, [&](const std::vector<std::size_t>& subset) {
                if (is_product_between(rest, subset, tolerance)) {
                    split = subset;
                    return true;
                }
                return false;
            });
        }
        if (!split) break;
        std::vector<std::size_t> labels;
        for (std::size_t i : *split) labels.push_back(current[i]);
        result.factors.push_back({labels, partial_trace(rest, *split)});
        const auto keep = detail::complement_of(*split, current.size());
        std::vector<std::size_t> remaining_labels;
        for (std::size_t i : keep) remaining_labels.push_back(current[i]);
        rest = partial_trace(rest, keep);
        current = std::move(remaining_labels);
    }
    result.factors.push_back({current, rest});
    result.genuinely_correlated = result.factors.size() == 1 && s.num_parties() >= 2;
    std::sort(result.factors.begin(), result.factors.end(), [](const Factor& a, const Factor& b) {
        if (a.parties.size() != b.parties.size()) return a.parties.size() > b.parties.size();
        return a.parties.front() < b.parties.front();
    });
    return result;
}

} // namespace qcorr
