// Shared test utilities: seeded random states and observables.
#pragma once

#include "qcorr/qcorr.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace test_support {

inline Eigen::MatrixXcd ginibre_density(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            a(i, j) = qcorr::cxd(gauss(rng), gauss(rng));
        }
    }
    Eigen::MatrixXcd rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline qcorr::QuantumState random_dense_state(std::size_t num_parties, std::mt19937_64& rng) {
    return qcorr::QuantumState::from_dense(num_parties,
                                           ginibre_density(std::size_t{1} << num_parties, rng));
}

inline qcorr::SparsePureState random_sparse_pure(std::size_t num_parties, std::size_t support,
                                                 std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, (std::size_t{1} << num_parties) - 1);
    std::map<std::string, qcorr::cxd> amps;
    while (amps.size() < support) {
        amps[qcorr::index_to_bits(pick(rng), num_parties)] = qcorr::cxd(gauss(rng), gauss(rng));
    }
    double norm2 = 0.0;
    for (const auto& [bits, amp] : amps) norm2 += std::norm(amp);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& [bits, amp] : amps) amp *= inv;
    return qcorr::SparsePureState(num_parties, std::move(amps));
}

inline qcorr::QuantumState random_structured_state(std::size_t num_parties, std::size_t terms,
                                                   std::size_t support, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.1, 1.0);
    std::vector<qcorr::WeightedTerm> mixture;
    double total = 0.0;
    for (std::size_t t = 0; t < terms; ++t) {
        const double w = uniform(rng);
        total += w;
        mixture.push_back({w, random_sparse_pure(num_parties, support, rng)});
    }
    for (auto& term : mixture) term.weight /= total;
    return qcorr::QuantumState::from_mixture(num_parties, std::move(mixture));
}

inline qcorr::SingleQubitObservable random_observable(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix2cd m;
    const double a = gauss(rng), d = gauss(rng), re = gauss(rng), im = gauss(rng);
    m << qcorr::cxd(a, 0.0), qcorr::cxd(re, im), qcorr::cxd(re, -im), qcorr::cxd(d, 0.0);
    return qcorr::SingleQubitObservable(m);
}

// Complete two-outcome instrument sharing a right factor so the branches
// sum to the identity.
inline std::vector<Eigen::Matrix2cd> random_instrument(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 1.5);
    const Eigen::MatrixXcd u = qcorr::haar_random_unitary(2, rng);
    const Eigen::MatrixXcd w = qcorr::haar_random_unitary(2, rng);
    const Eigen::MatrixXcd v = qcorr::haar_random_unitary(2, rng);
    const double a = angle(rng), b = angle(rng);
    Eigen::Matrix2cd d0 = Eigen::Matrix2cd::Zero();
    Eigen::Matrix2cd d1 = Eigen::Matrix2cd::Zero();
    d0(0, 0) = std::cos(a);
    d0(1, 1) = std::cos(b);
    d1(0, 0) = std::sin(a);
    d1(1, 1) = std::sin(b);
    return {u * d0 * v, w * d1 * v};
}

} // namespace test_support
