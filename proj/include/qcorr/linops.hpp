// linops.hpp
// Linear-algebra operations on quantum states: composition, reduction,
// local maps, expectation values and distance measures.
#pragma once

#include "observables.hpp"
#include "state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace qcorr {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Eigen::VectorXcd to_dense_vector(const SparsePureState& psi) {
    const std::size_t n = psi.num_parties();
    if (n > max_dense_parties) {
        throw size_limit_error("refusing to densify a pure state with more than " +
                               std::to_string(max_dense_parties) + " parties");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
    for (const auto& [bits, amp] : psi.amplitudes()) {
        v(static_cast<Eigen::Index>(bits_to_index(bits))) = amp;
    }
    return v;
}

namespace detail {

inline void check_party(std::size_t party, std::size_t num_parties) {
    if (party >= num_parties) throw std::invalid_argument("party index out of range");
}

inline std::vector<std::size_t> sorted_distinct(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
        throw std::invalid_argument("party list must not repeat indices");
    }
    return v;
}

inline std::vector<std::size_t> complement_of(const std::vector<std::size_t>& sorted_subset,
                                              std::size_t num_parties) {
    std::vector<std::size_t> rest;
    rest.reserve(num_parties - sorted_subset.size());
    std::size_t c = 0;
    for (std::size_t p = 0; p < num_parties; ++p) {
        if (c < sorted_subset.size() && sorted_subset[c] == p) {
            ++c;
        } else {
            rest.push_back(p);
        }
    }
    return rest;
}

// Composes a basis index from sub-indices over two disjoint, sorted position
// lists. Positions follow the party-0-most-significant convention.
inline std::size_t compose_index(const std::vector<std::size_t>& pos_a, std::size_t idx_a,
                                 const std::vector<std::size_t>& pos_b, std::size_t idx_b,
                                 std::size_t num_parties) {
    std::size_t out = 0;
    for (std::size_t t = 0; t < pos_a.size(); ++t) {
        out |= bit_of(idx_a, t, pos_a.size()) << (num_parties - 1 - pos_a[t]);
    }
    for (std::size_t t = 0; t < pos_b.size(); ++t) {
        out |= bit_of(idx_b, t, pos_b.size()) << (num_parties - 1 - pos_b[t]);
    }
    return out;
}

// rho' = m_emb rho m_emb^dagger with m acting on the listed parties (list
// order fixes sub-index significance; m need not be unitary).
inline Eigen::MatrixXcd conjugate_on_parties(const Eigen::MatrixXcd& rho, std::size_t num_parties,
                                             const std::vector<std::size_t>& parties,
                                             const Eigen::MatrixXcd& m) {
    const std::size_t k = parties.size();
    const std::size_t sub = std::size_t{1} << k;
    if (m.rows() != static_cast<Eigen::Index>(sub) || m.cols() != static_cast<Eigen::Index>(sub)) {
        throw std::invalid_argument("local operator dimension must match the party list");
    }
    const std::vector<std::size_t> rest = complement_of(sorted_distinct(parties), num_parties);
    const std::size_t rest_dim = std::size_t{1} << rest.size();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_parties);

    Eigen::MatrixXcd rows = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t r = 0; r < rest_dim; ++r) {
        std::vector<Eigen::Index> idx(sub);
        for (std::size_t x = 0; x < sub; ++x) {
            idx[x] = static_cast<Eigen::Index>(compose_index(parties, x, rest, r, num_parties));
        }
        for (Eigen::Index col = 0; col < dim; ++col) {
            for (std::size_t x = 0; x < sub; ++x) {
                cxd acc{0.0, 0.0};
                for (std::size_t y = 0; y < sub; ++y) {
                    acc += m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) *
                           rho(idx[y], col);
                }
                rows(idx[x], col) = acc;
            }
        }
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t r = 0; r < rest_dim; ++r) {
        std::vector<Eigen::Index> idx(sub);
        for (std::size_t x = 0; x < sub; ++x) {
            idx[x] = static_cast<Eigen::Index>(compose_index(parties, x, rest, r, num_parties));
        }
        for (Eigen::Index row = 0; row < dim; ++row) {
            for (std::size_t x = 0; x < sub; ++x) {
                cxd acc{0.0, 0.0};
                for (std::size_t y = 0; y < sub; ++y) {
                    acc += rows(row, idx[y]) *
                           std::conj(m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)));
                }
                out(row, idx[x]) = acc;
            }
        }
    }
    return out;
}

// m applied to a sparse amplitude map on the listed parties (unnormalized).
inline std::map<std::string, cxd> map_through_local_operator(
    const std::map<std::string, cxd>& amps, const std::vector<std::size_t>& parties,
    const Eigen::MatrixXcd& m) {
    const std::size_t k = parties.size();
    const std::size_t sub = std::size_t{1} << k;
    std::map<std::string, cxd> out;
    for (const auto& [bits, amp] : amps) {
        std::size_t x = 0;
        for (std::size_t t = 0; t < k; ++t) {
            x = (x << 1) | static_cast<std::size_t>(bits[parties[t]] - '0');
        }
        for (std::size_t y = 0; y < sub; ++y) {
            const cxd c = m(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
            if (std::abs(c) <= amplitude_floor) continue;
            std::string nb = bits;
            for (std::size_t t = 0; t < k; ++t) {
                nb[parties[t]] = bit_of(y, t, k) ? '1' : '0';
            }
            out[nb] += c * amp;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = std::abs(it->second) <= amplitude_floor ? out.erase(it) : std::next(it);
    }
    return out;
}

} // namespace detail

inline QuantumState permute_parties(const QuantumState& s, const std::vector<std::size_t>& source_of) {
    const std::size_t n = s.num_parties();
    if (source_of.size() != n) throw std::invalid_argument("permutation size must match party count");
    detail::sorted_distinct(source_of);
    for (std::size_t p : source_of) detail::check_party(p, n);
    if (s.is_dense()) {
        const auto& rho = s.dense_body();
        const auto dim = static_cast<Eigen::Index>(s.dimension());
        auto remap = [&](std::size_t i) {
            std::size_t out = 0;
            for (std::size_t t = 0; t < n; ++t) {
                out |= bit_of(i, source_of[t], n) << (n - 1 - t);
            }
            return static_cast<Eigen::Index>(out);
        };
        Eigen::MatrixXcd out(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                out(remap(static_cast<std::size_t>(i)), remap(static_cast<std::size_t>(j))) = rho(i, j);
            }
        }
        return QuantumState::from_dense(n, std::move(out));
    }
    std::vector<WeightedTerm> terms;
    terms.reserve(s.mixture_body().size());
    for (const auto& term : s.mixture_body()) {
        std::map<std::string, cxd> amps;
        for (const auto& [bits, amp] : term.state.amplitudes()) {
            std::string nb(n, '0');
            for (std::size_t t = 0; t < n; ++t) nb[t] = bits[source_of[t]];
            amps.emplace(std::move(nb), amp);
        }
        terms.push_back({term.weight, SparsePureState(n, std::move(amps))});
    }
    return QuantumState::from_mixture(n, std::move(terms));
}

inline QuantumState tensor_product(const QuantumState& a, const QuantumState& b) {
    const std::size_t n = a.num_parties() + b.num_parties();
    if (a.is_dense() || b.is_dense()) {
        return QuantumState::from_dense(n, kron(a.to_dense_matrix(), b.to_dense_matrix()));
    }
    std::vector<WeightedTerm> terms;
    terms.reserve(a.mixture_body().size() * b.mixture_body().size());
    for (const auto& ta : a.mixture_body()) {
        for (const auto& tb : b.mixture_body()) {
            std::map<std::string, cxd> amps;
            for (const auto& [sa, va] : ta.state.amplitudes()) {
                for (const auto& [sb, vb] : tb.state.amplitudes()) {
                    amps.emplace(sa + sb, va * vb);
                }
            }
            terms.push_back({ta.weight * tb.weight, SparsePureState(n, std::move(amps))});
        }
    }
    return QuantumState::from_mixture(n, std::move(terms));
}

// Tensor product with the parties of a placed at the given sorted positions
// of the combined system and the parties of b filling the rest in order.
inline QuantumState tensor_on_parties(const QuantumState& a, const QuantumState& b,
                                      const std::vector<std::size_t>& positions_of_a) {
    const std::size_t n = a.num_parties() + b.num_parties();
    const auto pos_a = detail::sorted_distinct(positions_of_a);
    if (pos_a.size() != a.num_parties()) {
        throw std::invalid_argument("position list must match the first factor's party count");
    }
    for (std::size_t p : pos_a) detail::check_party(p, n);
    const auto pos_b = detail::complement_of(pos_a, n);
    std::vector<std::size_t> source_of(n);
    for (std::size_t t = 0; t < pos_a.size(); ++t) source_of[pos_a[t]] = t;
    for (std::size_t t = 0; t < pos_b.size(); ++t) source_of[pos_b[t]] = a.num_parties() + t;
    return permute_parties(tensor_product(a, b), source_of);
}

inline QuantumState partial_trace(const QuantumState& s, const std::vector<std::size_t>& keep) {
    const std::size_t n = s.num_parties();
    const auto kept = detail::sorted_distinct(keep);
    if (kept.empty()) throw std::invalid_argument("partial trace must keep at least one party");
    for (std::size_t p : kept) detail::check_party(p, n);
    if (kept.size() == n) return s;
    const auto traced = detail::complement_of(kept, n);

    if (s.is_dense()) {
        const auto& rho = s.dense_body();
        const std::size_t kd = std::size_t{1} << kept.size();
        const std::size_t td = std::size_t{1} << traced.size();
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kd),
                                                      static_cast<Eigen::Index>(kd));
        for (std::size_t i = 0; i < kd; ++i) {
            for (std::size_t j = 0; j < kd; ++j) {
                cxd acc{0.0, 0.0};
                for (std::size_t t = 0; t < td; ++t) {
                    acc += rho(static_cast<Eigen::Index>(detail::compose_index(kept, i, traced, t, n)),
                               static_cast<Eigen::Index>(detail::compose_index(kept, j, traced, t, n)));
                }
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
            }
        }
        return QuantumState::from_dense(kept.size(), std::move(out));
    }

    std::vector<WeightedTerm> terms;
    for (const auto& term : s.mixture_body()) {
        std::map<std::string, std::map<std::string, cxd>> groups;
        for (const auto& [bits, amp] : term.state.amplitudes()) {
            std::string tb, kb;
            tb.reserve(traced.size());
            kb.reserve(kept.size());
            for (std::size_t p : traced) tb.push_back(bits[p]);
            for (std::size_t p : kept) kb.push_back(bits[p]);
            groups[std::move(tb)][std::move(kb)] += amp;
        }
        for (auto& [tb, amps] : groups) {
            const double n2 = map_norm_squared(amps);
            if (n2 <= probability_floor * probability_floor) continue;
            auto [psi, factor] = normalized_from_map(kept.size(), amps);
            terms.push_back({term.weight * factor, std::move(psi)});
        }
    }
    return QuantumState::from_mixture(kept.size(), std::move(terms));
}

inline QuantumState apply_unitary_on(const QuantumState& s, const std::vector<std::size_t>& parties,
                                     const Eigen::MatrixXcd& u) {
    const std::size_t n = s.num_parties();
    for (std::size_t p : parties) detail::check_party(p, n);
    detail::sorted_distinct(parties);
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() >
        norm_tolerance) {
        throw std::invalid_argument("operator must be unitary");
    }
    if (s.is_dense()) {
        return QuantumState::from_dense(n, detail::conjugate_on_parties(s.dense_body(), n, parties, u));
    }
    std::vector<WeightedTerm> terms;
    terms.reserve(s.mixture_body().size());
    for (const auto& term : s.mixture_body()) {
        auto amps = detail::map_through_local_operator(term.state.amplitudes(), parties, u);
        auto [psi, factor] = normalized_from_map(n, amps);
        terms.push_back({term.weight * factor, std::move(psi)});
    }
    return QuantumState::from_mixture(n, std::move(terms));
}

// Pure dephasing of one party in the given basis.
inline QuantumState dephase_party(const QuantumState& s, std::size_t party,
                                  const SingleQubitBasis& basis) {
    const std::size_t n = s.num_parties();
    detail::check_party(party, n);
    if (s.is_dense()) {
        Eigen::MatrixXcd out =
            detail::conjugate_on_parties(s.dense_body(), n, {party}, basis.projector(0)) +
            detail::conjugate_on_parties(s.dense_body(), n, {party}, basis.projector(1));
        return QuantumState::from_dense(n, std::move(out));
    }
    std::vector<WeightedTerm> terms;
    for (const auto& term : s.mixture_body()) {
        for (std::size_t k = 0; k < 2; ++k) {
            auto amps = detail::map_through_local_operator(term.state.amplitudes(), {party},
                                                           basis.projector(k));
            if (map_norm_squared(amps) <= probability_floor) continue;
            auto [psi, factor] = normalized_from_map(n, amps);
            terms.push_back({term.weight * factor, std::move(psi)});
        }
    }
    return QuantumState::from_mixture(n, std::move(terms));
}

// One selected branch of a product instrument: applies op_i to party i and
// renormalizes. Returns the branch state and its probability.
inline std::pair<QuantumState, double> apply_local_kraus(
    const QuantumState& s, const std::vector<Eigen::Matrix2cd>& per_party) {
    const std::size_t n = s.num_parties();
    if (per_party.size() != n) {
        throw std::invalid_argument("kraus list must provide one operator per party");
    }
    if (s.is_dense()) {
        Eigen::MatrixXcd rho = s.dense_body();
        for (std::size_t p = 0; p < n; ++p) {
            rho = detail::conjugate_on_parties(rho, n, {p}, per_party[p]);
        }
        const double prob = rho.trace().real();
        if (prob < probability_floor) {
            throw branch_impossible_error("instrument branch has vanishing probability");
        }
        return {QuantumState::from_dense(n, rho / prob), prob};
    }
    std::vector<WeightedTerm> terms;
    double prob = 0.0;
    for (const auto& term : s.mixture_body()) {
        auto amps = term.state.amplitudes();
        for (std::size_t p = 0; p < n; ++p) {
            amps = detail::map_through_local_operator(amps, {p}, per_party[p]);
        }
        const double n2 = map_norm_squared(amps);
        if (n2 <= probability_floor * probability_floor) continue;
        auto [psi, factor] = normalized_from_map(n, amps);
        prob += term.weight * factor;
        terms.push_back({term.weight * factor, std::move(psi)});
    }
    if (prob < probability_floor) {
        throw branch_impossible_error("instrument branch has vanishing probability");
    }
    for (auto& t : terms) t.weight /= prob;
    return {QuantumState::from_mixture(n, std::move(terms)), prob};
}

inline double expectation_value(const QuantumState& s, const LocalObservableList& obs) {
    const std::size_t n = s.num_parties();
    if (obs.size() != n) throw std::invalid_argument("observable list must cover every party");
    if (s.is_dense()) {
        const auto& rho = s.dense_body();
        const std::size_t dim = s.dimension();
        cxd acc{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                const cxd r = rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (std::abs(r) == 0.0) continue;
                cxd prod{1.0, 0.0};
                for (std::size_t p = 0; p < n; ++p) {
                    prod *= obs.at(p).matrix()(static_cast<Eigen::Index>(bit_of(j, p, n)),
                                               static_cast<Eigen::Index>(bit_of(i, p, n)));
                }
                acc += r * prod;
            }
        }
        return acc.real();
    }
    cxd acc{0.0, 0.0};
    for (const auto& term : s.mixture_body()) {
        cxd t{0.0, 0.0};
        for (const auto& [si, ai] : term.state.amplitudes()) {
            for (const auto& [sj, aj] : term.state.amplitudes()) {
                cxd prod{1.0, 0.0};
                for (std::size_t p = 0; p < n; ++p) {
                    prod *= obs.at(p).matrix()(static_cast<Eigen::Index>(si[p] - '0'),
                                               static_cast<Eigen::Index>(sj[p] - '0'));
                }
                t += std::conj(ai) * aj * prod;
            }
        }
        acc += term.weight * t;
    }
    return acc.real();
}

inline double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        const double lam = eigenvalues(i);
        if (lam > eigenvalue_floor) h -= lam * std::log2(lam);
    }
    return h;
}

inline double entropy_bits(const QuantumState& s) {
    Eigen::MatrixXcd m = s.is_dense() ? s.dense_body() : s.support_matrix(s.support_strings());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return entropy_of_spectrum(es.eigenvalues());
}

inline double fidelity_with_pure(const QuantumState& s, const SparsePureState& target) {
    if (target.num_parties() != s.num_parties()) {
        throw std::invalid_argument("fidelity target must match the party count");
    }
    if (s.is_dense()) {
        const Eigen::VectorXcd v = to_dense_vector(target);
        return (v.adjoint() * s.dense_body() * v)(0).real();
    }
    double acc = 0.0;
    for (const auto& term : s.mixture_body()) {
        acc += term.weight * std::norm(target.inner_product(term.state));
    }
    return acc;
}

inline double trace_distance(const QuantumState& a, const QuantumState& b) {
    if (a.num_parties() != b.num_parties()) {
        throw std::invalid_argument("trace distance needs matching party counts");
    }
    Eigen::MatrixXcd diff;
    if (!a.is_dense() && !b.is_dense()) {
        std::set<std::string> support;
        for (const auto& s : a.support_strings()) support.insert(s);
        for (const auto& s : b.support_strings()) support.insert(s);
        const std::vector<std::string> joint(support.begin(), support.end());
        diff = a.support_matrix(joint) - b.support_matrix(joint);
    } else {
        diff = a.to_dense_matrix() - b.to_dense_matrix();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

} // namespace qcorr
