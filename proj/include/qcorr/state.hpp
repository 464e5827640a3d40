// state.hpp
// Mixed n-qubit states, held either as dense density matrices or as
// structured mixtures of sparse pure states.
#pragma once

#include "pure_state.hpp"
#include "types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <iostream>
#include <set>
#include <utility>
#include <variant>
#include <vector>

namespace qcorr {

inline constexpr std::size_t max_dense_parties = 12;
inline constexpr std::size_t full_spectrum_check_parties = 8;

struct WeightedTerm {
    double weight;
    SparsePureState state;
};

class QuantumState {
public:
    static QuantumState from_dense(std::size_t num_parties, Eigen::MatrixXcd rho) {
        if (num_parties == 0) throw std::invalid_argument("state needs at least one party");
        if (num_parties > max_dense_parties) {
            throw size_limit_error("dense states support at most " +
                                   std::to_string(max_dense_parties) + " parties");
        }
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_parties);
        if (rho.rows() != dim || rho.cols() != dim) {
            throw std::invalid_argument("density matrix dimension must be 2^n x 2^n");
        }
        const double herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        if (herm_defect > hermiticity_warn_tolerance) {
            std::cerr << "qcorr: symmetrizing density matrix with hermiticity defect "
                      << herm_defect << "\n";
        }
        rho = 0.5 * (rho + rho.adjoint()).eval();
        if (std::abs(rho.trace().real() - 1.0) > trace_tolerance ||
            std::abs(rho.trace().imag()) > trace_tolerance) {
            throw std::invalid_argument("density matrix must have unit trace");
        }
        if (num_parties <= full_spectrum_check_parties) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -positivity_tolerance) {
                throw std::invalid_argument("density matrix must be positive semidefinite");
            }
        }
        return QuantumState(num_parties, std::move(rho));
    }

    static QuantumState from_mixture(std::size_t num_parties, std::vector<WeightedTerm> terms) {
        if (num_parties == 0) throw std::invalid_argument("state needs at least one party");
        std::vector<WeightedTerm> kept;
        kept.reserve(terms.size());
        double total = 0.0;
        for (auto& t : terms) {
            if (t.weight < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
            if (t.state.num_parties() != num_parties) {
                throw std::invalid_argument("mixture terms must share the party count");
            }
            if (t.weight == 0.0) continue;
            total += t.weight;
            kept.push_back(std::move(t));
        }
        if (kept.empty()) throw std::invalid_argument("mixture needs at least one weighted term");
        if (std::abs(total - 1.0) > norm_tolerance) {
            throw std::invalid_argument("mixture weights must sum to one");
        }
        return QuantumState(num_parties, std::move(kept));
    }

    static QuantumState from_pure(const SparsePureState& psi) {
        return from_mixture(psi.num_parties(), {WeightedTerm{1.0, psi}});
    }

    std::size_t num_parties() const { return num_parties_; }

    std::size_t dimension() const { return std::size_t{1} << num_parties_; }

    bool is_dense() const { return std::holds_alternative<Eigen::MatrixXcd>(body_); }

    const Eigen::MatrixXcd& dense_body() const {
        if (!is_dense()) throw std::logic_error("state is not held densely");
        return std::get<Eigen::MatrixXcd>(body_);
    }

    const std::vector<WeightedTerm>& mixture_body() const {
        if (is_dense()) throw std::logic_error("state is not held as a mixture");
        return std::get<std::vector<WeightedTerm>>(body_);
    }

    Eigen::MatrixXcd to_dense_matrix() const {
        if (is_dense()) return dense_body();
        if (num_parties_ > max_dense_parties) {
            throw size_limit_error("refusing to densify a state with more than " +
                                   std::to_string(max_dense_parties) + " parties");
        }
        const auto dim = static_cast<Eigen::Index>(dimension());
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto& term : mixture_body()) {
            for (const auto& [si, ai] : term.state.amplitudes()) {
                const auto i = static_cast<Eigen::Index>(bits_to_index(si));
                for (const auto& [sj, aj] : term.state.amplitudes()) {
                    const auto j = static_cast<Eigen::Index>(bits_to_index(sj));
                    rho(i, j) += term.weight * ai * std::conj(aj);
                }
            }
        }
        return rho;
    }

    QuantumState densified() const {
        if (is_dense()) return *this;
        return from_dense(num_parties_, to_dense_matrix());
    }

    // Sorted distinct computational strings carrying amplitude (structured only).
    std::vector<std::string> support_strings() const {
        std::set<std::string> support;
        for (const auto& term : mixture_body()) {
            for (const auto& [bits, amp] : term.state.amplitudes()) support.insert(bits);
        }
        return {support.begin(), support.end()};
    }

    // Restriction of the density matrix to the given support strings. Exact for
    // structured states whose amplitudes all live on the listed strings.
    Eigen::MatrixXcd support_matrix(const std::vector<std::string>& support) const {
        const auto k = static_cast<Eigen::Index>(support.size());
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(k, k);
        for (const auto& term : mixture_body()) {
            for (Eigen::Index i = 0; i < k; ++i) {
                const cxd ai = term.state.amplitude(support[static_cast<std::size_t>(i)]);
                if (std::abs(ai) == 0.0) continue;
                for (Eigen::Index j = 0; j < k; ++j) {
                    const cxd aj = term.state.amplitude(support[static_cast<std::size_t>(j)]);
                    m(i, j) += term.weight * ai * std::conj(aj);
                }
            }
        }
        return m;
    }

    // Full positivity audit, also available for states above the automatic
    // ingestion check size.
    void validate_spectrum() const {
        Eigen::MatrixXcd m;
        if (is_dense()) {
            m = dense_body();
        } else {
            m = support_matrix(support_strings());
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -positivity_tolerance) {
            throw std::invalid_argument("state spectrum has a negative eigenvalue");
        }
    }

private:
    QuantumState(std::size_t num_parties, Eigen::MatrixXcd rho)
        : num_parties_(num_parties), body_(std::move(rho)) {}

    QuantumState(std::size_t num_parties, std::vector<WeightedTerm> terms)
        : num_parties_(num_parties), body_(std::move(terms)) {}

    std::size_t num_parties_;
    std::variant<Eigen::MatrixXcd, std::vector<WeightedTerm>> body_;
};

} // namespace qcorr
