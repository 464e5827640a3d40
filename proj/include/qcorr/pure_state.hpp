// pure_state.hpp
// Sparse pure states over n qubits, stored as bitstring -> amplitude maps.
#pragma once

#include "types.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace qcorr {

class SparsePureState {
public:
    SparsePureState(std::size_t num_parties, std::map<std::string, cxd> amplitudes)
        : num_parties_(num_parties), amplitudes_(std::move(amplitudes)) {
        if (num_parties_ == 0) {
            throw std::invalid_argument("pure state needs at least one party");
        }
        if (amplitudes_.empty()) {
            throw std::invalid_argument("pure state needs at least one amplitude");
        }
        double norm2 = 0.0;
        for (const auto& [bits, amp] : amplitudes_) {
            if (bits.size() != num_parties_) {
                throw std::invalid_argument("amplitude bitstring length must equal the party count");
            }
            bits_to_index(bits);
            norm2 += std::norm(amp);
        }
        if (std::abs(norm2 - 1.0) > norm_tolerance) {
            throw std::invalid_argument("pure state amplitudes must have unit norm");
        }
    }

    static SparsePureState basis_string(const std::string& bits) {
        return SparsePureState(bits.size(), {{bits, cxd{1.0, 0.0}}});
    }

    std::size_t num_parties() const { return num_parties_; }

    const std::map<std::string, cxd>& amplitudes() const { return amplitudes_; }

    cxd amplitude(const std::string& bits) const {
        auto it = amplitudes_.find(bits);
        return it == amplitudes_.end() ? cxd{0.0, 0.0} : it->second;
    }

    std::size_t support_size() const { return amplitudes_.size(); }

    // <this|other>
    cxd inner_product(const SparsePureState& other) const {
        if (other.num_parties_ != num_parties_) {
            throw std::invalid_argument("inner product needs matching party counts");
        }
        cxd acc{0.0, 0.0};
        for (const auto& [bits, amp] : amplitudes_) {
            auto it = other.amplitudes_.find(bits);
            if (it != other.amplitudes_.end()) acc += std::conj(amp) * it->second;
        }
        return acc;
    }

private:
    std::size_t num_parties_;
    std::map<std::string, cxd> amplitudes_;
};

inline double map_norm_squared(const std::map<std::string, cxd>& m) {
    double n2 = 0.0;
    for (const auto& [bits, amp] : m) n2 += std::norm(amp);
    return n2;
}

// Builds a normalized sparse state from an unnormalized amplitude map,
// dropping negligible entries. Returns the squared norm that was divided out.
inline std::pair<SparsePureState, double> normalized_from_map(std::size_t num_parties,
                                                              const std::map<std::string, cxd>& m) {
    double n2 = map_norm_squared(m);
    if (n2 < probability_floor) {
        throw branch_impossible_error("state component has vanishing norm");
    }
    double inv = 1.0 / std::sqrt(n2);
    std::map<std::string, cxd> out;
    for (const auto& [bits, amp] : m) {
        if (std::abs(amp) * inv > amplitude_floor) out.emplace(bits, amp * inv);
    }
    return {SparsePureState(num_parties, std::move(out)), n2};
}

} // namespace qcorr
