// observables.hpp
// Single-qubit observables, measurement bases and local observable lists.
#pragma once

#include "types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace qcorr {

class SingleQubitObservable {
public:
    explicit SingleQubitObservable(const Eigen::Matrix2cd& m) : m_(m) {
        if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > orthonormality_tolerance) {
            throw std::invalid_argument("single-qubit observable must be hermitian");
        }
    }

    const Eigen::Matrix2cd& matrix() const { return m_; }

    SingleQubitObservable centered(double mean) const {
        return SingleQubitObservable(m_ - mean * Eigen::Matrix2cd::Identity());
    }

private:
    Eigen::Matrix2cd m_;
};

inline SingleQubitObservable identity_observable() {
    return SingleQubitObservable(Eigen::Matrix2cd::Identity());
}

inline SingleQubitObservable sigma_x() {
    Eigen::Matrix2cd m;
    m << 0.0, 1.0, 1.0, 0.0;
    return SingleQubitObservable(m);
}

inline SingleQubitObservable sigma_y() {
    Eigen::Matrix2cd m;
    m << cxd{0.0, 0.0}, cxd{0.0, -1.0}, cxd{0.0, 1.0}, cxd{0.0, 0.0};
    return SingleQubitObservable(m);
}

inline SingleQubitObservable sigma_z() {
    Eigen::Matrix2cd m;
    m << 1.0, 0.0, 0.0, -1.0;
    return SingleQubitObservable(m);
}

inline SingleQubitObservable pauli_from_letter(char letter) {
    switch (letter) {
        case 'X': return sigma_x();
        case 'Y': return sigma_y();
        case 'Z': return sigma_z();
        case 'I': return identity_observable();
        default: throw std::invalid_argument("pauli letter must be one of X, Y, Z, I");
    }
}

class SingleQubitBasis {
public:
    SingleQubitBasis(const Eigen::Vector2cd& b0, const Eigen::Vector2cd& b1) : b_{b0, b1} {
        auto close = [](cxd a, cxd b) { return std::abs(a - b) <= orthonormality_tolerance; };
        if (!close(b_[0].dot(b_[0]), 1.0) || !close(b_[1].dot(b_[1]), 1.0) ||
            !close(b_[0].dot(b_[1]), 0.0)) {
            throw std::invalid_argument("measurement basis must be orthonormal");
        }
    }

    static SingleQubitBasis computational() {
        return SingleQubitBasis(Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0));
    }

    static SingleQubitBasis hadamard() {
        const double r = 1.0 / std::sqrt(2.0);
        return SingleQubitBasis(Eigen::Vector2cd(r, r), Eigen::Vector2cd(r, -r));
    }

    static SingleQubitBasis from_angle(double theta) { return from_angles(theta, 0.0); }

    // b0 = cos(theta)|0> + e^{i phi} sin(theta)|1>, b1 orthogonal to it.
    static SingleQubitBasis from_angles(double theta, double phi) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cxd ph = std::polar(1.0, phi);
        return SingleQubitBasis(Eigen::Vector2cd(c, ph * s), Eigen::Vector2cd(s, -ph * c));
    }

    const Eigen::Vector2cd& vector(std::size_t k) const {
        if (k > 1) throw std::invalid_argument("basis vector index must be 0 or 1");
        return b_[k];
    }

    Eigen::Matrix2cd projector(std::size_t k) const {
        const Eigen::Vector2cd& v = vector(k);
        return v * v.adjoint();
    }

private:
    Eigen::Vector2cd b_[2];
};

class LocalObservableList {
public:
    explicit LocalObservableList(std::vector<SingleQubitObservable> sites) : sites_(std::move(sites)) {
        if (sites_.empty()) throw std::invalid_argument("observable list needs at least one site");
    }

    static LocalObservableList from_pauli_string(const std::string& letters) {
        std::vector<SingleQubitObservable> sites;
        sites.reserve(letters.size());
        for (char c : letters) sites.push_back(pauli_from_letter(c));
        return LocalObservableList(std::move(sites));
    }

    std::size_t size() const { return sites_.size(); }

    const SingleQubitObservable& at(std::size_t i) const { return sites_.at(i); }

    LocalObservableList with_site(std::size_t i, const SingleQubitObservable& obs) const {
        std::vector<SingleQubitObservable> sites = sites_;
        sites.at(i) = obs;
        return LocalObservableList(std::move(sites));
    }

private:
    std::vector<SingleQubitObservable> sites_;
};

inline LocalObservableList identity_list(std::size_t num_parties) {
    return LocalObservableList(std::vector<SingleQubitObservable>(num_parties, identity_observable()));
}

} // namespace qcorr
