// types.hpp
// Shared scalar types, tolerances, bitstring helpers and error types.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcorr {

using cxd = std::complex<double>;

inline constexpr const char* library_version = "0.1.0";

inline constexpr double norm_tolerance = 1e-10;
inline constexpr double trace_tolerance = 1e-10;
inline constexpr double hermiticity_warn_tolerance = 1e-8;
inline constexpr double positivity_tolerance = 1e-8;
inline constexpr double orthonormality_tolerance = 1e-12;
inline constexpr double product_cut_tolerance = 1e-9;
inline constexpr double probability_floor = 1e-15;
inline constexpr double eigenvalue_floor = 1e-12;
inline constexpr double amplitude_floor = 1e-14;

class size_limit_error : public std::runtime_error {
public:
    explicit size_limit_error(const std::string& what) : std::runtime_error(what) {}
};

class branch_impossible_error : public std::runtime_error {
public:
    explicit branch_impossible_error(const std::string& what) : std::runtime_error(what) {}
};

// Bitstring conventions: party 0 owns the leftmost character of a bitstring
// and the most significant bit of a computational basis index.
inline std::size_t bit_of(std::size_t index, std::size_t party, std::size_t num_parties) {
    return (index >> (num_parties - 1 - party)) & std::size_t{1};
}

inline std::string index_to_bits(std::size_t index, std::size_t num_parties) {
    std::string s(num_parties, '0');
    for (std::size_t p = 0; p < num_parties; ++p) {
        if (bit_of(index, p, num_parties) != 0) s[p] = '1';
    }
    return s;
}

inline std::size_t bits_to_index(const std::string& bits) {
    std::size_t v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring may contain only '0' and '1'");
        }
        v = (v << 1) | static_cast<std::size_t>(c - '0');
    }
    return v;
}

inline std::size_t count_ones(const std::string& bits) {
    std::size_t c = 0;
    for (char ch : bits) {
        if (ch == '1') ++c;
    }
    return c;
}

inline std::string flip_bit(std::string bits, std::size_t party) {
    bits.at(party) = bits.at(party) == '0' ? '1' : '0';
    return bits;
}

} // namespace qcorr
