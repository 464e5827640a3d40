// covariance.hpp
// n-party covariance of local observables and scans over Pauli strings.
#pragma once

#include "linops.hpp"

#include <array>
#include <map>
#include <random>
#include <string>

namespace qcorr {

// cov(X_1..X_n) = < prod_i (X_i - <X_i>) >
inline double covariance(const QuantumState& s, const LocalObservableList& obs) {
    const std::size_t n = s.num_parties();
    if (obs.size() != n) throw std::invalid_argument("observable list must cover every party");
    std::vector<SingleQubitObservable> centered;
    centered.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        const double mean = expectation_value(s, identity_list(n).with_site(p, obs.at(p)));
        centered.push_back(obs.at(p).centered(mean));
    }
    return expectation_value(s, LocalObservableList(std::move(centered)));
}

struct CovarianceScanResult {
    std::map<std::string, double> values;
    double max_abs = 0.0;
    std::string argmax;
};

namespace detail {

inline std::vector<std::array<double, 3>> pauli_means(const QuantumState& s) {
    const std::size_t n = s.num_parties();
    std::vector<std::array<double, 3>> means(n);
    const char axes[3] = {'X', 'Y', 'Z'};
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t a = 0; a < 3; ++a) {
            means[p][a] =
                expectation_value(s, identity_list(n).with_site(p, pauli_from_letter(axes[a])));
        }
    }
    return means;
}

inline double covariance_of_pauli_string(const QuantumState& s, const std::string& letters,
                                         const std::vector<std::array<double, 3>>& means) {
    const std::size_t n = s.num_parties();
    std::vector<SingleQubitObservable> centered;
    centered.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        const std::size_t axis = letters[p] == 'X' ? 0 : letters[p] == 'Y' ? 1 : 2;
        centered.push_back(pauli_from_letter(letters[p]).centered(means[p][axis]));
    }
    return expectation_value(s, LocalObservableList(std::move(centered)));
}

inline void record_scan_entry(CovarianceScanResult& result, const std::string& letters,
                              double value) {
    result.values.emplace(letters, value);
    if (result.argmax.empty() || std::abs(value) > result.max_abs) {
        result.max_abs = std::abs(value);
        result.argmax = letters;
    }
}

} // namespace detail

inline constexpr std::size_t max_scan_strings = 200000;

// Exhaustive scan of all 3^n Pauli strings over {X,Y,Z}.
inline CovarianceScanResult pauli_covariance_scan(const QuantumState& s) {
    const std::size_t n = s.num_parties();
    double budget = 1.0;
    for (std::size_t p = 0; p < n; ++p) budget *= 3.0;
    if (budget > static_cast<double>(max_scan_strings)) {
        throw size_limit_error("full Pauli scan exceeds " + std::to_string(max_scan_strings) +
                               " strings; use the sampled scan");
    }
    const auto means = detail::pauli_means(s);
    const char axes[3] = {'X', 'Y', 'Z'};
    CovarianceScanResult result;
    std::string letters(n, 'X');
    const auto total = static_cast<std::size_t>(budget);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t p = n; p-- > 0;) {
            letters[p] = axes[c % 3];
            c /= 3;
        }
        detail::record_scan_entry(result, letters,
                                  detail::covariance_of_pauli_string(s, letters, means));
    }
    return result;
}

// Seeded uniform sample of Pauli strings for systems too large to enumerate.
inline CovarianceScanResult pauli_covariance_scan_sampled(const QuantumState& s, std::size_t count,
                                                          std::uint64_t seed) {
    const std::size_t n = s.num_parties();
    const auto means = detail::pauli_means(s);
    const char axes[3] = {'X', 'Y', 'Z'};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 2);
    CovarianceScanResult result;
    std::string letters(n, 'X');
    for (std::size_t trial = 0; trial < count; ++trial) {
        for (std::size_t p = 0; p < n; ++p) letters[p] = axes[pick(rng)];
        if (result.values.count(letters)) continue;
        detail::record_scan_entry(result, letters,
                                  detail::covariance_of_pauli_string(s, letters, means));
    }
    return result;
}

// Closed forms for the noisy W family under sigma_z on every site (odd n).
inline double w_mixture_sigma_z_mean(std::size_t n, double fidelity) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("closed form requires odd n >= 3");
    return (2.0 * fidelity - 1.0) * (static_cast<double>(n) - 2.0) / static_cast<double>(n);
}

inline double w_mixture_sigma_z_covariance(std::size_t n, double fidelity) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("closed form requires odd n >= 3");
    const double m = w_mixture_sigma_z_mean(n, fidelity);
    const double nn = static_cast<double>(n);
    const double first = -fidelity * std::pow(1.0 - m, nn - 1.0) * (1.0 + m);
    const double second = (1.0 - fidelity) * std::pow(1.0 + m, nn - 1.0) * (1.0 - m);
    return first + second;
}

} // namespace qcorr
