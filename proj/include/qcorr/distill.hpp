// distill.hpp
// Local filtering that concentrates noisy W mixtures toward the W state,
// with closed-form success probability and output fidelity.
#pragma once

#include "linops.hpp"
#include "named_states.hpp"

#include <cmath>
#include <optional>

namespace qcorr {

// One-qubit two-outcome instrument: success keeps |0> and damps |1> by
// sqrt(epsilon); failure collects the discarded weight.
class FilterInstrument {
public:
    explicit FilterInstrument(double epsilon) : epsilon_(epsilon) {
        if (!(epsilon > 0.0) || epsilon > 1.0) {
            throw std::invalid_argument("filter strength must lie in (0, 1]");
        }
    }

    double epsilon() const { return epsilon_; }

    Eigen::Matrix2cd success_operator() const {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(0, 0) = 1.0;
        m(1, 1) = std::sqrt(epsilon_);
        return m;
    }

    Eigen::Matrix2cd failure_operator() const {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(1, 1) = std::sqrt(1.0 - epsilon_);
        return m;
    }

private:
    double epsilon_;
};

struct DistillationOutcome {
    double success_probability = 0.0;
    double fidelity = 0.0;
    QuantumState state;
};

// All parties apply the filter and every one succeeds. Fidelity is measured
// against the given target (the W state by default).
inline DistillationOutcome distill_by_local_filtering(
    const QuantumState& s, double epsilon,
    const std::optional<SparsePureState>& target = std::nullopt) {
    const std::size_t n = s.num_parties();
    const FilterInstrument filter(epsilon);
    const std::vector<Eigen::Matrix2cd> ops(n, filter.success_operator());
    auto [out, prob] = apply_local_kraus(s, ops);
    const SparsePureState& ref = target ? *target : w_state(n);
    return {prob, fidelity_with_pure(out, ref), std::move(out)};
}

struct FilterClosedForms {
    double success_probability = 0.0;
    double fidelity = 0.0;
};

// Exact outcome of the all-success filter branch on w_mixture(n, 1/2).
inline FilterClosedForms w_mixture_filter_closed_forms(std::size_t n, double epsilon) {
    if (n < 3) throw std::invalid_argument("closed forms require at least 3 parties");
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw std::invalid_argument("filter strength must lie in (0, 1]");
    }
    const double tail = std::pow(epsilon, static_cast<double>(n) - 2.0);
    return {0.5 * epsilon * (1.0 + tail), 1.0 / (1.0 + tail)};
}

// Success probability needed to reach a target fidelity, inverting the
// closed forms above.
inline double success_probability_for_fidelity(std::size_t n, double fidelity) {
    if (n < 3) throw std::invalid_argument("closed forms require at least 3 parties");
    if (!(fidelity > 0.5) || !(fidelity < 1.0)) {
        throw std::domain_error("target fidelity must lie in (1/2, 1)");
    }
    const double ratio = (1.0 - fidelity) / fidelity;
    return 0.5 / fidelity * std::pow(ratio, 1.0 / (static_cast<double>(n) - 2.0));
}

// Lower bound that a distillation scheme drawing on a singlet fraction p
// would need to beat: p^2 (1 - F) / ((1 - p) F).
inline double success_probability_reference_bound(double p, double fidelity) {
    if (!(p >= 0.0) || !(p < 1.0)) throw std::invalid_argument("fraction must lie in [0, 1)");
    if (!(fidelity > 0.0) || fidelity > 1.0) {
        throw std::invalid_argument("fidelity must lie in (0, 1]");
    }
    return p * p * (1.0 - fidelity) / ((1.0 - p) * fidelity);
}

} // namespace qcorr
