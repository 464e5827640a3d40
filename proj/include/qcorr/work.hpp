// work.hpp
// Sequential measure-and-record protocols converting an n-qubit state into a
// classical register, the work they draw from a heat bath, and the gap
// between unrestricted and cut-restricted protocols.
#pragma once

#include "cuts.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

namespace qcorr {

inline constexpr std::size_t max_work_parties = 10;

struct MeasureInBasis {
    std::size_t party = 0;
    SingleQubitBasis basis = SingleQubitBasis::computational();
};

struct MeasureInConditionalEigenbasis {
    std::size_t party = 0;
};

using WorkStep = std::variant<MeasureInBasis, MeasureInConditionalEigenbasis>;

inline std::size_t step_party(const WorkStep& step) {
    return std::visit([](const auto& s) { return s.party; }, step);
}

struct WorkProtocolResult {
    double work_bits = 0.0;
    double classical_entropy_bits = 0.0;
    std::vector<double> branch_probabilities;
    std::vector<std::string> branch_outcomes;
};

namespace detail {

// Re-inserts one bit at party position p of an m-party index.
inline std::size_t insert_bit(std::size_t reduced, std::size_t p, std::size_t a, std::size_t m) {
    const std::size_t low_count = m - 1 - p;
    const std::size_t high = reduced >> low_count;
    const std::size_t low = reduced & ((std::size_t{1} << low_count) - 1);
    return ((((high << 1) | a)) << low_count) | low;
}

// <v| rho |v> contraction on party position p: unnormalized post-measurement
// state on the remaining parties.
inline Eigen::MatrixXcd contract_party(const Eigen::MatrixXcd& rho, std::size_t m, std::size_t p,
                                       const Eigen::Vector2cd& v) {
    const std::size_t rdim = std::size_t{1} << (m - 1);
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(rdim), static_cast<Eigen::Index>(rdim));
    for (std::size_t i = 0; i < rdim; ++i) {
        for (std::size_t j = 0; j < rdim; ++j) {
            cxd acc{0.0, 0.0};
            for (std::size_t a = 0; a < 2; ++a) {
                for (std::size_t b = 0; b < 2; ++b) {
                    acc += std::conj(v(static_cast<Eigen::Index>(a))) *
                           v(static_cast<Eigen::Index>(b)) *
                           rho(static_cast<Eigen::Index>(insert_bit(i, p, a, m)),
                               static_cast<Eigen::Index>(insert_bit(j, p, b, m)));
                }
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return out;
}

inline Eigen::Matrix2cd one_qubit_marginal(const Eigen::MatrixXcd& rho, std::size_t m,
                                           std::size_t p) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    const std::size_t rdim = std::size_t{1} << (m - 1);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            cxd acc{0.0, 0.0};
            for (std::size_t r = 0; r < rdim; ++r) {
                acc += rho(static_cast<Eigen::Index>(insert_bit(r, p, a, m)),
                           static_cast<Eigen::Index>(insert_bit(r, p, b, m)));
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    }
    return out;
}

struct WorkBranch {
    double prob = 1.0;
    Eigen::MatrixXcd rho;
    std::string outcomes;
};

} // namespace detail

// Measures every party exactly once, in the listed order, recording each
// outcome. The work extracted is n minus the Shannon entropy of the record.
inline WorkProtocolResult run_work_protocol(const QuantumState& s,
                                            const std::vector<WorkStep>& steps) {
    const std::size_t n = s.num_parties();
    if (n > max_work_parties) {
        throw size_limit_error("work protocols are limited to " +
                               std::to_string(max_work_parties) + " parties");
    }
    if (steps.size() != n) {
        throw std::invalid_argument("protocol must measure every party exactly once");
    }
    {
        std::vector<bool> seen(n, false);
        for (const auto& step : steps) {
            const std::size_t p = step_party(step);
            if (p >= n || seen[p]) {
                throw std::invalid_argument("protocol must measure every party exactly once");
            }
            seen[p] = true;
        }
    }

    std::vector<std::size_t> remaining(n);
    for (std::size_t p = 0; p < n; ++p) remaining[p] = p;
    std::vector<detail::WorkBranch> branches;
    branches.push_back({1.0, s.to_dense_matrix(), ""});

    for (const auto& step : steps) {
        const std::size_t party = step_party(step);
        const std::size_t pos = static_cast<std::size_t>(
            std::find(remaining.begin(), remaining.end(), party) - remaining.begin());
        const std::size_t m = remaining.size();
        std::vector<detail::WorkBranch> next;
        next.reserve(branches.size() * 2);
        for (auto& branch : branches) {
            SingleQubitBasis basis = SingleQubitBasis::computational();
            if (const auto* fixed = std::get_if<MeasureInBasis>(&step)) {
                basis = fixed->basis;
            } else {
                const Eigen::Matrix2cd marg = detail::one_qubit_marginal(branch.rho, m, pos);
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(marg);
                basis = SingleQubitBasis(es.eigenvectors().col(0), es.eigenvectors().col(1));
            }
            for (std::size_t k = 0; k < 2; ++k) {
                Eigen::MatrixXcd reduced = detail::contract_party(branch.rho, m, pos, basis.vector(k));
                const double p = reduced.trace().real();
                if (p <= probability_floor) continue;
                next.push_back({branch.prob * p, reduced / p,
                                branch.outcomes + static_cast<char>('0' + k)});
            }
        }
        branches = std::move(next);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pos));
    }

    WorkProtocolResult result;
    for (const auto& branch : branches) {
        result.branch_probabilities.push_back(branch.prob);
        result.branch_outcomes.push_back(branch.outcomes);
        if (branch.prob > probability_floor) {
            result.classical_entropy_bits -= branch.prob * std::log2(branch.prob);
        }
    }
    result.work_bits = static_cast<double>(n) - result.classical_entropy_bits;
    return result;
}

// The protocol family under study: measure one chosen party in a tunable
// basis, record the remaining parties computationally in ascending order,
// and read the final party out in the eigenbasis of its conditional state.
inline std::vector<WorkStep> family_steps(std::size_t num_parties, std::size_t measuring,
                                          double theta, double phi) {
    if (measuring >= num_parties) throw std::invalid_argument("party index out of range");
    std::vector<WorkStep> steps;
    if (num_parties == 1) {
        steps.push_back(MeasureInConditionalEigenbasis{0});
        return steps;
    }
    steps.push_back(MeasureInBasis{measuring, SingleQubitBasis::from_angles(theta, phi)});
    std::vector<std::size_t> rest;
    for (std::size_t p = 0; p < num_parties; ++p) {
        if (p != measuring) rest.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < rest.size(); ++i) {
        steps.push_back(MeasureInBasis{rest[i], SingleQubitBasis::computational()});
    }
    steps.push_back(MeasureInConditionalEigenbasis{rest.back()});
    return steps;
}

inline double protocol_family_work(const QuantumState& s, std::size_t measuring, double theta,
                                   double phi) {
    return run_work_protocol(s, family_steps(s.num_parties(), measuring, theta, phi)).work_bits;
}

struct OptimizeOptions {
    std::size_t theta_points = 65;
    std::size_t phi_points = 33;
    std::size_t refine_rounds = 3;
    double improvement_threshold = 1e-9;
};

struct BasisOptimum {
    double theta = 0.0;
    double phi = 0.0;
    double work = 0.0;
};

// Grid search with refinement. Scan order is deterministic (theta outer,
// phi inner, both ascending from zero) and a candidate must beat the best
// by the improvement threshold, so flat directions keep the earliest point.
inline BasisOptimum optimize_measurement_basis(const QuantumState& s, std::size_t measuring,
                                               const OptimizeOptions& options = {}) {
    const double pi = std::acos(-1.0);
    BasisOptimum best{0.0, 0.0, protocol_family_work(s, measuring, 0.0, 0.0)};
    double theta_center = 0.0, theta_width = pi;
    double phi_center = 0.0, phi_width = 2.0 * pi;
    bool full_phi = true;
    for (std::size_t round = 0; round <= options.refine_rounds; ++round) {
        const double theta_lo = std::max(0.0, theta_center - theta_width / 2.0);
        const double theta_hi = std::min(pi, theta_center + theta_width / 2.0);
        for (std::size_t i = 0; i < options.theta_points; ++i) {
            const double theta =
                options.theta_points == 1
                    ? theta_lo
                    : theta_lo + (theta_hi - theta_lo) * static_cast<double>(i) /
                                     static_cast<double>(options.theta_points - 1);
            for (std::size_t j = 0; j < options.phi_points; ++j) {
                const double phi =
                    full_phi ? phi_width * static_cast<double>(j) /
                                   static_cast<double>(options.phi_points)
                             : phi_center - phi_width / 2.0 +
                                   phi_width * static_cast<double>(j) /
                                       static_cast<double>(options.phi_points - 1);
                const double work = protocol_family_work(s, measuring, theta, phi);
                if (work > best.work + options.improvement_threshold) {
                    best = {theta, phi, work};
                }
            }
        }
        theta_center = best.theta;
        phi_center = best.phi;
        theta_width /= 8.0;
        phi_width /= 8.0;
        full_phi = false;
    }
    return best;
}

struct UnrestrictedOptimum {
    std::size_t measuring = 0;
    BasisOptimum optimum;
};

inline UnrestrictedOptimum unrestricted_protocol_optimum(const QuantumState& s,
                                                         const OptimizeOptions& options = {}) {
    UnrestrictedOptimum best;
    bool first = true;
    for (std::size_t p = 0; p < s.num_parties(); ++p) {
        const BasisOptimum candidate = optimize_measurement_basis(s, p, options);
        if (first || candidate.work > best.optimum.work + options.improvement_threshold) {
            best = {p, candidate};
            first = false;
        }
    }
    return best;
}

// Protocol confined to one side of a cut at a time: each zone is converted
// independently, a single qubit by an eigenbasis readout and a larger zone
// by the family optimum on its marginal.
inline double cut_restricted_optimum(const QuantumState& s,
                                     const std::vector<std::size_t>& left_positions,
                                     const OptimizeOptions& options = {}) {
    const auto left = detail::sorted_distinct(left_positions);
    const auto right = detail::complement_of(left, s.num_parties());
    if (left.empty() || right.empty()) {
        throw std::invalid_argument("both sides of a cut must be nonempty");
    }
    double total = 0.0;
    for (const auto& zone : {left, right}) {
        const QuantumState marginal = partial_trace(s, zone);
        if (zone.size() == 1) {
            total += 1.0 - entropy_bits(marginal);
        } else {
            total += unrestricted_protocol_optimum(marginal, options).optimum.work;
        }
    }
    return total;
}

struct CutWork {
    Bipartition cut;
    double work = 0.0;
};

struct DeltaWResult {
    UnrestrictedOptimum unrestricted;
    std::vector<CutWork> restricted;
    double best_restricted = 0.0;
    Bipartition best_cut;
    double delta_w = 0.0;
};

inline DeltaWResult delta_w(const QuantumState& s, const OptimizeOptions& options = {}) {
    const std::size_t n = s.num_parties();
    if (n < 2 || n > 6) {
        throw size_limit_error("the cut comparison is limited to between 2 and 6 parties");
    }
    DeltaWResult result{unrestricted_protocol_optimum(s, options), {}, 0.0, Bipartition(n, 1), 0.0};
    bool first = true;
    for (const auto& cut : all_cuts(n)) {
        const double w = cut_restricted_optimum(s, cut.left_parties(), options);
        result.restricted.push_back({cut, w});
        if (first || w > result.best_restricted) {
            result.best_restricted = w;
            result.best_cut = cut;
            first = false;
        }
    }
    result.delta_w = result.unrestricted.optimum.work - result.best_restricted;
    return result;
}

// Work stored in an already classical (computational-diagonal) register.
inline double work_from_classical_state(const QuantumState& s) {
    const Eigen::MatrixXcd rho = s.to_dense_matrix();
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            if (i != j && std::abs(rho(i, j)) > trace_tolerance) {
                throw std::invalid_argument("state must be diagonal in the computational basis");
            }
        }
    }
    return static_cast<double>(s.num_parties()) - entropy_bits(s);
}

} // namespace qcorr
