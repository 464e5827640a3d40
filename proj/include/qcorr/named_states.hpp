// named_states.hpp
// Factory functions for the states used throughout the library and CLI.
#pragma once

#include "state.hpp"

#include <cmath>
#include <map>
#include <string>

namespace qcorr {

// Symmetric single-excitation state (|100..> + |010..> + ... ) / sqrt(n).
inline SparsePureState w_state(std::size_t n) {
    if (n == 0) throw std::invalid_argument("w state needs at least one party");
    std::map<std::string, cxd> amps;
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::string bits(n, '0');
        bits[i] = '1';
        amps.emplace(bits, cxd{a, 0.0});
    }
    return SparsePureState(n, std::move(amps));
}

// Spin-flipped counterpart with a single zero among ones.
inline SparsePureState w_bar_state(std::size_t n) {
    if (n == 0) throw std::invalid_argument("w-bar state needs at least one party");
    std::map<std::string, cxd> amps;
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::string bits(n, '1');
        bits[i] = '0';
        amps.emplace(bits, cxd{a, 0.0});
    }
    return SparsePureState(n, std::move(amps));
}

inline QuantumState w_mixture(std::size_t n, double fidelity) {
    if (fidelity < 0.0 || fidelity > 1.0) {
        throw std::invalid_argument("mixture fidelity must lie in [0, 1]");
    }
    std::vector<WeightedTerm> terms;
    if (fidelity > 0.0) terms.push_back({fidelity, w_state(n)});
    if (fidelity < 1.0) terms.push_back({1.0 - fidelity, w_bar_state(n)});
    return QuantumState::from_mixture(n, std::move(terms));
}

// Equal classical mixture of the all-zero and all-one strings.
inline QuantumState ghz_diagonal(std::size_t n) {
    if (n < 2) throw std::invalid_argument("ghz-diagonal state needs at least two parties");
    return QuantumState::from_mixture(
        n, {WeightedTerm{0.5, SparsePureState::basis_string(std::string(n, '0'))},
            WeightedTerm{0.5, SparsePureState::basis_string(std::string(n, '1'))}});
}

// Uniform classical mixture over all even-weight strings.
inline QuantumState even_parity_mixture(std::size_t n) {
    if (n < 2) throw std::invalid_argument("even-parity mixture needs at least two parties");
    std::vector<WeightedTerm> terms;
    const double w = 1.0 / static_cast<double>(std::size_t{1} << (n - 1));
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
        std::string bits = index_to_bits(i, n);
        if (count_ones(bits) % 2 == 0) {
            terms.push_back({w, SparsePureState::basis_string(bits)});
        }
    }
    return QuantumState::from_mixture(n, std::move(terms));
}

namespace detail {

inline SparsePureState doubled_strings(const SparsePureState& psi) {
    std::map<std::string, cxd> amps;
    for (const auto& [bits, amp] : psi.amplitudes()) amps.emplace(bits + bits, amp);
    return SparsePureState(2 * psi.num_parties(), std::move(amps));
}

} // namespace detail

// The w mixture with every party split against a fresh copying ancilla; the
// ancilla block repeats the original string.
inline QuantumState split_w_mixture(std::size_t n, double fidelity) {
    if (fidelity < 0.0 || fidelity > 1.0) {
        throw std::invalid_argument("mixture fidelity must lie in [0, 1]");
    }
    std::vector<WeightedTerm> terms;
    if (fidelity > 0.0) terms.push_back({fidelity, detail::doubled_strings(w_state(n))});
    if (fidelity < 1.0) terms.push_back({1.0 - fidelity, detail::doubled_strings(w_bar_state(n))});
    return QuantumState::from_mixture(2 * n, std::move(terms));
}

inline SparsePureState bell_phi_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return SparsePureState(2, {{"00", cxd{r, 0.0}}, {"11", cxd{r, 0.0}}});
}

inline SparsePureState bell_phi_minus() {
    const double r = 1.0 / std::sqrt(2.0);
    return SparsePureState(2, {{"00", cxd{r, 0.0}}, {"11", cxd{-r, 0.0}}});
}

inline SparsePureState bell_psi_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return SparsePureState(2, {{"01", cxd{r, 0.0}}, {"10", cxd{r, 0.0}}});
}

inline SparsePureState bell_psi_minus() {
    const double r = 1.0 / std::sqrt(2.0);
    return SparsePureState(2, {{"01", cxd{r, 0.0}}, {"10", cxd{-r, 0.0}}});
}

inline QuantumState bell_diagonal(double phi_plus, double phi_minus, double psi_plus,
                                  double psi_minus) {
    std::vector<WeightedTerm> terms;
    if (phi_plus > 0.0) terms.push_back({phi_plus, bell_phi_plus()});
    if (phi_minus > 0.0) terms.push_back({phi_minus, bell_phi_minus()});
    if (psi_plus > 0.0) terms.push_back({psi_plus, bell_psi_plus()});
    if (psi_minus > 0.0) terms.push_back({psi_minus, bell_psi_minus()});
    return QuantumState::from_mixture(2, std::move(terms));
}

namespace detail {

inline SparsePureState append_bit(const SparsePureState& psi, char bit) {
    std::map<std::string, cxd> amps;
    for (const auto& [bits, amp] : psi.amplitudes()) amps.emplace(bits + bit, amp);
    return SparsePureState(psi.num_parties() + 1, std::move(amps));
}

} // namespace detail

// Equal mixture of the two psi Bell pairs, each flagged on a third qubit.
inline QuantumState flagged_bell_mixture() {
    return QuantumState::from_mixture(
        3, {WeightedTerm{0.5, detail::append_bit(bell_psi_plus(), '0')},
            WeightedTerm{0.5, detail::append_bit(bell_psi_minus(), '1')}});
}

inline QuantumState maximally_mixed(std::size_t n) {
    if (n == 0) throw std::invalid_argument("state needs at least one party");
    std::vector<WeightedTerm> terms;
    const double w = 1.0 / static_cast<double>(std::size_t{1} << n);
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
        terms.push_back({w, SparsePureState::basis_string(index_to_bits(i, n))});
    }
    return QuantumState::from_mixture(n, std::move(terms));
}

// Dispatch by name, as used by the CLI. Numeric parameters: n, fidelity and
// the bell-diagonal weights pp, pm, sp, sm.
inline QuantumState named_state(const std::string& name,
                                const std::map<std::string, double>& params = {}) {
    auto get = [&params](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    auto get_n = [&get](double fallback) {
        double v = get("n", fallback);
        if (v < 1.0 || v != std::floor(v)) {
            throw std::invalid_argument("parameter n must be a positive integer");
        }
        return static_cast<std::size_t>(v);
    };
    if (name == "w") return QuantumState::from_pure(w_state(get_n(3)));
    if (name == "wbar") return QuantumState::from_pure(w_bar_state(get_n(3)));
    if (name == "w_mixture") return w_mixture(get_n(3), get("fidelity", 0.5));
    if (name == "ghz_diag") return ghz_diagonal(get_n(3));
    if (name == "parity_even") return even_parity_mixture(get_n(3));
    if (name == "w_split_mixture") return split_w_mixture(get_n(3), get("fidelity", 0.5));
    if (name == "flagged_bell") return flagged_bell_mixture();
    if (name == "bell_phi_plus") return QuantumState::from_pure(bell_phi_plus());
    if (name == "bell_phi_minus") return QuantumState::from_pure(bell_phi_minus());
    if (name == "bell_psi_plus") return QuantumState::from_pure(bell_psi_plus());
    if (name == "bell_psi_minus") return QuantumState::from_pure(bell_psi_minus());
    if (name == "bell_diag") {
        return bell_diagonal(get("pp", 1.0 / 6.0), get("pm", 1.0 / 6.0), get("sp", 2.0 / 3.0),
                             get("sm", 0.0));
    }
    if (name == "mixed") return maximally_mixed(get_n(1));
    throw std::invalid_argument("unknown state name: " + name);
}

} // namespace qcorr
