// serialize.hpp
// JSON persistence for quantum states and numeric rounding helpers used by
// the reporting layer.
#pragma once

#include "state.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace qcorr {

// Rounds through a 12-significant-digit decimal representation so reports
// are stable across platforms.
inline double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

inline nlohmann::json state_to_json(const QuantumState& s) {
    nlohmann::json j;
    j["num_parties"] = s.num_parties();
    if (s.is_dense()) {
        j["representation"] = "dense";
        const auto& rho = s.dense_body();
        std::vector<double> re, im;
        re.reserve(static_cast<std::size_t>(rho.size()));
        im.reserve(static_cast<std::size_t>(rho.size()));
        for (Eigen::Index r = 0; r < rho.rows(); ++r) {
            for (Eigen::Index c = 0; c < rho.cols(); ++c) {
                re.push_back(rho(r, c).real());
                im.push_back(rho(r, c).imag());
            }
        }
        j["re"] = std::move(re);
        j["im"] = std::move(im);
        return j;
    }
    j["representation"] = "structured";
    nlohmann::json mixture = nlohmann::json::array();
    for (const auto& term : s.mixture_body()) {
        nlohmann::json entry;
        entry["weight"] = term.weight;
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [bits, amp] : term.state.amplitudes()) {
            terms.push_back({{"bits", bits}, {"re", amp.real()}, {"im", amp.imag()}});
        }
        entry["terms"] = std::move(terms);
        mixture.push_back(std::move(entry));
    }
    j["mixture"] = std::move(mixture);
    return j;
}

inline QuantumState state_from_json(const nlohmann::json& j) {
    if (!j.contains("representation") || !j.contains("num_parties")) {
        throw std::invalid_argument("state document needs representation and num_parties");
    }
    const auto n = j.at("num_parties").get<std::size_t>();
    const auto repr = j.at("representation").get<std::string>();
    if (repr == "dense") {
        const auto re = j.at("re").get<std::vector<double>>();
        const auto im = j.at("im").get<std::vector<double>>();
        const std::size_t dim = std::size_t{1} << n;
        if (re.size() != dim * dim || im.size() != dim * dim) {
            throw std::invalid_argument("dense entries must hold dim*dim values");
        }
        Eigen::MatrixXcd rho(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    cxd(re[r * dim + c], im[r * dim + c]);
            }
        }
        return QuantumState::from_dense(n, std::move(rho));
    }
    if (repr == "structured") {
        std::vector<WeightedTerm> terms;
        for (const auto& entry : j.at("mixture")) {
            std::map<std::string, cxd> amps;
            for (const auto& t : entry.at("terms")) {
                amps[t.at("bits").get<std::string>()] +=
                    cxd(t.value("re", 0.0), t.value("im", 0.0));
            }
            terms.push_back({entry.at("weight").get<double>(), SparsePureState(n, std::move(amps))});
        }
        return QuantumState::from_mixture(n, std::move(terms));
    }
    throw std::invalid_argument("unknown state representation: " + repr);
}

inline void save_state(const QuantumState& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << state_to_json(s).dump(2) << "\n";
}

inline QuantumState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    nlohmann::json j;
    in >> j;
    return state_from_json(j);
}

} // namespace qcorr
