// postulates.hpp
// Scenario harness probing how correlation measures respond to local
// operations: adding parties, filtering, splitting, local extensions, and
// averaged monotonicity under local instruments.
#pragma once

#include "cuts.hpp"
#include "distill.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace qcorr {

enum class ScenarioKind {
    add_uncorrelated_party,
    local_filter,
    split_party,
    split_all_parties,
    random_local_extension,
};

inline std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::add_uncorrelated_party: return "add_uncorrelated_party";
        case ScenarioKind::local_filter: return "local_filter";
        case ScenarioKind::split_party: return "split_party";
        case ScenarioKind::split_all_parties: return "split_all_parties";
        case ScenarioKind::random_local_extension: return "random_local_extension";
    }
    return "unknown";
}

struct ScenarioParams {
    double epsilon = 0.5;
    std::vector<std::size_t> parties;
    std::uint64_t seed = 1;
    std::size_t split_party_index = 0;
};

enum class Verdict { satisfied, violated, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::satisfied: return "satisfied";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct PostulateReport {
    ScenarioKind scenario = ScenarioKind::add_uncorrelated_party;
    double value_before = 0.0;
    double value_after = 0.0;
    double allowed_increase = 0.0;
    bool zero_preserving = false;
    Verdict verdict = Verdict::inconclusive;
};

inline QuantumState add_uncorrelated_party(const QuantumState& s) {
    std::map<std::string, cxd> zero{{"0", cxd{1.0, 0.0}}};
    return tensor_product(s, QuantumState::from_pure(SparsePureState(1, std::move(zero))));
}

// Splits one party into two perfectly classically correlated halves by
// copying its computational bit onto a fresh trailing party.
inline QuantumState split_party_with_cnot(const QuantumState& s, std::size_t party) {
    const std::size_t n = s.num_parties();
    detail::check_party(party, n);
    if (!s.is_dense()) {
        std::vector<WeightedTerm> terms;
        terms.reserve(s.mixture_body().size());
        for (const auto& term : s.mixture_body()) {
            std::map<std::string, cxd> amps;
            for (const auto& [bits, amp] : term.state.amplitudes()) {
                amps.emplace(bits + bits[party], amp);
            }
            terms.push_back({term.weight, SparsePureState(n + 1, std::move(amps))});
        }
        return QuantumState::from_mixture(n + 1, std::move(terms));
    }
    if (n + 1 > max_dense_parties) {
        throw size_limit_error("splitting would exceed the dense size limit");
    }
    const auto& rho = s.dense_body();
    const auto dim = static_cast<Eigen::Index>(s.dimension());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const std::size_t bi = bit_of(static_cast<std::size_t>(i), party, n);
        for (Eigen::Index j = 0; j < dim; ++j) {
            const std::size_t bj = bit_of(static_cast<std::size_t>(j), party, n);
            out((i << 1) | static_cast<Eigen::Index>(bi), (j << 1) | static_cast<Eigen::Index>(bj)) =
                rho(i, j);
        }
    }
    return QuantumState::from_dense(n + 1, std::move(out));
}

inline QuantumState split_all_parties(const QuantumState& s) {
    QuantumState out = s;
    for (std::size_t p = 0; p < s.num_parties(); ++p) {
        out = split_party_with_cnot(out, p);
    }
    return out;
}

inline Eigen::MatrixXcd haar_random_unitary(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            g(i, j) = cxd(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const cxd d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

// Each listed party receives a fresh |0> ancilla (appended in ascending
// owner order) followed by a Haar random unitary on the pair. Correlations
// beyond those already present cannot arise this way.
inline QuantumState random_local_extension(const QuantumState& s,
                                           const std::vector<std::size_t>& parties,
                                           std::uint64_t seed) {
    const std::size_t n = s.num_parties();
    auto owners = detail::sorted_distinct(parties);
    if (owners.empty()) {
        owners.resize(n);
        for (std::size_t p = 0; p < n; ++p) owners[p] = p;
    }
    for (std::size_t p : owners) detail::check_party(p, n);
    std::mt19937_64 rng(seed);
    QuantumState out = s;
    for (std::size_t t = 0; t < owners.size(); ++t) {
        out = add_uncorrelated_party(out);
        const std::size_t ancilla = n + t;
        out = apply_unitary_on(out, {owners[t], ancilla}, haar_random_unitary(4, rng));
    }
    return out;
}

inline QuantumState apply_scenario(const QuantumState& s, ScenarioKind kind,
                                   const ScenarioParams& params) {
    switch (kind) {
        case ScenarioKind::add_uncorrelated_party:
            return add_uncorrelated_party(s);
        case ScenarioKind::local_filter: {
            const FilterInstrument filter(params.epsilon);
            const std::vector<Eigen::Matrix2cd> ops(s.num_parties(), filter.success_operator());
            return apply_local_kraus(s, ops).first;
        }
        case ScenarioKind::split_party:
            return split_party_with_cnot(s, params.split_party_index);
        case ScenarioKind::split_all_parties:
            return split_all_parties(s);
        case ScenarioKind::random_local_extension:
            return random_local_extension(s, params.parties, params.seed);
    }
    throw std::invalid_argument("unknown scenario");
}

inline double scenario_allowed_increase(const QuantumState& s, ScenarioKind kind,
                                        const ScenarioParams& params) {
    switch (kind) {
        case ScenarioKind::add_uncorrelated_party: return 0.0;
        case ScenarioKind::local_filter: return 0.0;
        case ScenarioKind::split_party: return 1.0;
        case ScenarioKind::split_all_parties: return static_cast<double>(s.num_parties());
        case ScenarioKind::random_local_extension:
            return params.parties.empty() ? static_cast<double>(s.num_parties())
                                          : static_cast<double>(params.parties.size());
    }
    throw std::invalid_argument("unknown scenario");
}

// Runs one scenario against a scalar correlation functional. For
// zero-preserving functionals the question is whether a vanishing value
// stays zero; otherwise whether the value respects the allowed increase.
inline PostulateReport run_postulate_scenario(
    const QuantumState& s, const std::function<double(const QuantumState&)>& functional,
    bool zero_preserving, ScenarioKind kind, const ScenarioParams& params = {},
    double tolerance = 1e-10) {
    PostulateReport report;
    report.scenario = kind;
    report.zero_preserving = zero_preserving;
    report.value_before = functional(s);
    const QuantumState after = apply_scenario(s, kind, params);
    report.value_after = functional(after);
    report.allowed_increase = scenario_allowed_increase(s, kind, params);
    if (zero_preserving) {
        if (report.value_before > tolerance) {
            report.verdict = Verdict::inconclusive;
        } else {
            report.verdict = report.value_after <= tolerance + 1e-8 ? Verdict::satisfied
                                                                    : Verdict::violated;
        }
    } else {
        report.verdict =
            report.value_after <= report.value_before + report.allowed_increase + 1e-9
                ? Verdict::satisfied
                : Verdict::violated;
    }
    return report;
}

struct MonotonicityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    std::size_t branches_used = 0;
};

// Checks f(rho) >= sum_k p_k f(rho_k) for the product instrument whose
// party-local branches are given per party.
inline MonotonicityReport check_measure_monotonicity(
    const std::function<double(const QuantumState&)>& functional, const QuantumState& s,
    const std::vector<std::vector<Eigen::Matrix2cd>>& kraus_by_party) {
    const std::size_t n = s.num_parties();
    if (kraus_by_party.size() != n) {
        throw std::invalid_argument("instrument must provide a branch list per party");
    }
    for (const auto& branches : kraus_by_party) {
        if (branches.empty()) throw std::invalid_argument("every party needs at least one branch");
        Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
        for (const auto& e : branches) sum += e.adjoint() * e;
        if ((sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > norm_tolerance) {
            throw std::invalid_argument("instrument branches must be complete on every party");
        }
    }
    MonotonicityReport report;
    report.lhs = functional(s);
    std::vector<std::size_t> choice(n, 0);
    while (true) {
        std::vector<Eigen::Matrix2cd> ops;
        ops.reserve(n);
        for (std::size_t p = 0; p < n; ++p) ops.push_back(kraus_by_party[p][choice[p]]);
        try {
            auto [branch, prob] = apply_local_kraus(s, ops);
            report.rhs += prob * functional(branch);
            ++report.branches_used;
        } catch (const branch_impossible_error&) {
        }
        std::size_t p = n;
        while (p > 0) {
            --p;
            if (++choice[p] < kraus_by_party[p].size()) break;
            choice[p] = 0;
            if (p == 0) {
                report.holds = report.lhs >= report.rhs - 1e-8;
                return report;
            }
        }
    }
}

} // namespace qcorr
