#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace qcorr;

TEST_CASE("covariance is multilinear in each slot") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const QuantumState s = w_mixture(3, 0.37);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a0 = test_support::random_observable(rng);
        const auto b0 = test_support::random_observable(rng);
        const auto a1 = test_support::random_observable(rng);
        const auto a2 = test_support::random_observable(rng);
        const double alpha = coeff(rng), beta = coeff(rng);
        const SingleQubitObservable mixed(alpha * a0.matrix() + beta * b0.matrix());
        const double lhs = covariance(s, LocalObservableList({mixed, a1, a2}));
        const double rhs = alpha * covariance(s, LocalObservableList({a0, a1, a2})) +
                           beta * covariance(s, LocalObservableList({b0, a1, a2}));
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("covariance vanishes whenever one slot is the identity") {
    const QuantumState s = w_mixture(3, 0.8);
    CHECK(std::abs(covariance(s, LocalObservableList::from_pauli_string("IZZ"))) < 1e-12);
    CHECK(std::abs(covariance(s, LocalObservableList::from_pauli_string("ZIZ"))) < 1e-12);
}

TEST_CASE("sigma_z closed forms match the simulated covariance") {
    for (std::size_t n : {3, 5}) {
        for (double f : {0.0, 0.2, 0.5, 0.8, 1.0}) {
            const QuantumState s = w_mixture(n, f);
            const double simulated =
                covariance(s, LocalObservableList::from_pauli_string(std::string(n, 'Z')));
            CHECK(std::abs(simulated - w_mixture_sigma_z_covariance(n, f)) < 1e-12);
            const double mean = expectation_value(
                s, identity_list(n).with_site(0, sigma_z()));
            CHECK(std::abs(mean - w_mixture_sigma_z_mean(n, f)) < 1e-12);
        }
    }
    CHECK(std::abs(w_mixture_sigma_z_covariance(3, 1.0) + 16.0 / 27.0) < 1e-15);
    CHECK(std::abs(w_mixture_sigma_z_covariance(3, 0.8) + 0.384) < 1e-15);
    CHECK_THROWS_AS(w_mixture_sigma_z_covariance(4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(w_mixture_sigma_z_mean(2, 0.5), std::invalid_argument);
}

TEST_CASE("the balanced mixture hides from every local covariance") {
    const QuantumState s = w_mixture(3, 0.5);
    const CovarianceScanResult scan = pauli_covariance_scan(s);
    CHECK(scan.values.size() == 27);
    CHECK(scan.max_abs < 1e-12);
    const CovarianceScanResult sampled = pauli_covariance_scan_sampled(w_mixture(7, 0.5), 300, 5);
    CHECK(sampled.max_abs < 1e-10);
}

TEST_CASE("the scan surfaces the strongest string for visible mixtures") {
    const CovarianceScanResult scan = pauli_covariance_scan(w_mixture(3, 0.8));
    CHECK(std::abs(scan.values.at("ZZZ") + 0.384) < 1e-12);
    CHECK(scan.max_abs >= 0.384 - 1e-12);
    CHECK(scan.max_abs <= 1.0 + 1e-12);
}

TEST_CASE("scan guards against exponential blowups") {
    CHECK_THROWS_AS(pauli_covariance_scan(w_mixture(13, 0.5)), size_limit_error);
    CHECK_NOTHROW(pauli_covariance_scan_sampled(w_mixture(13, 0.5), 25, 1));
}

TEST_CASE("splitting every party exposes perfect classical correlations") {
    const QuantumState split = split_w_mixture(3, 0.5);
    const double cov =
        covariance(split, LocalObservableList::from_pauli_string(std::string(6, 'Z')));
    CHECK(std::abs(cov - 1.0) < 1e-12);
    const CovarianceScanResult before = pauli_covariance_scan(w_mixture(3, 0.5));
    CHECK(before.max_abs < 1e-12);
}
