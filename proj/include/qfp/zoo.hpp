#pragma once

#include <cstddef>
#include <cstdint>

#include "qfp/matrix.hpp"
#include "qfp/smp.hpp"

namespace qfp {

struct EqualityParams {
    unsigned n = 4;
    std::size_t coins = 64;  // L
    unsigned hash_bits = 3;  // t
    std::uint64_t seed = 1;
};

inline constexpr int kEqualityReseedAttempts = 20;

// Public-coin equality: coin l carries t random n-bit strings r_{l,i}, each
// party sends the t parities <input, r_{l,i}> mod 2, and D_l = I_{2^t}. The
// builder retries with derived seeds until the protocol is correct for EQ at
// `thresholds`, and throws ValidationExhausted after kEqualityReseedAttempts.
ClassicalSMP build_equality_protocol(const EqualityParams& params,
                                     const CorrectnessThresholds& thresholds = CorrectnessThresholds::quarter());

// D(x, y) = <x, y> mod 2 for n-bit strings, M = 2^n, rows x and columns y in
// binary counting order.
BooleanMatrix ip_matrix(unsigned n);
// 2D - J.
RealMatrix ip_signed_matrix(unsigned n);

// Ones in the first column, zeros elsewhere.
BooleanMatrix first_column_ones(std::size_t m);

ClassicalSMP random_protocol(unsigned n, std::size_t coins, unsigned alice_bits, unsigned bob_bits, double density,
                             std::uint64_t seed);

BooleanMatrix random_boolean_matrix(std::size_t rows, std::size_t cols, double density, SeededRng& rng);

}  // namespace qfp
