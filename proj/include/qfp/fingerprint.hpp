#pragma once

#include <cstddef>
#include <vector>

#include "qfp/matrix.hpp"
#include "qfp/smp.hpp"
#include "qfp/width.hpp"

namespace qfp {

// Basis layout flag (x) coin (x) payload. index = flag * (L * payload) + l * payload + a.
struct FingerprintLayout {
    std::size_t flag_dim = 2;
    std::size_t coin_dim = 1;
    std::size_t payload_dim = 1;

    std::size_t dim() const noexcept { return flag_dim * coin_dim * payload_dim; }
    std::size_t index(std::size_t flag, std::size_t l, std::size_t a) const noexcept {
        return flag * (coin_dim * payload_dim) + l * payload_dim + a;
    }
};

// Flag values. The basic construction uses {0, 1}; the decomposition one
// uses two flag qubits, |00>, |01> (Alice junk) and |10> (Bob junk).
inline constexpr std::size_t kPayloadFlag = 0;
inline constexpr std::size_t kBasicJunkFlag = 1;
inline constexpr std::size_t kAliceJunkFlag = 1;
inline constexpr std::size_t kBobJunkFlag = 2;

struct StateVector {
    std::vector<double> amps;

    std::size_t dim() const noexcept { return amps.size(); }
    double norm() const;
    // dim x 1 matrix, for dumping in the matrix text format.
    RealMatrix as_column() const;
};

FingerprintLayout basic_layout(const ClassicalSMP& p);
FingerprintLayout decomposition_layout(const ClassicalSMP& p, const Decomposition& d);

// |0>|u_x>, u_x = L^{-1/2} sum_l |l>|a(x,l)>.
StateVector alice_fingerprint_basic(const ClassicalSMP& p, Input x);
// |0>|v_y> + |1>|junk>, v_y = (L MA)^{-1/2} sum_l |l> D_l|b(y,l)>.
StateVector bob_fingerprint_basic(const ClassicalSMP& p, Input y);

// The decomposition variants expect the square-padded protocol
// (pad_to_square) and a decomposition of its referee family.
// |00>|u_x> + |01>|junk>, u_x = (rw sqrt(L))^{-1} sum_l |l> E_l^T|a(x,l)>.
StateVector alice_fingerprint_decomp(const ClassicalSMP& p, const Decomposition& d, Input x);
// |00>|v_y> + |10>|junk'>, v_y = (cw sqrt(L))^{-1} sum_l |l> F_l|b(y,l)>.
StateVector bob_fingerprint_decomp(const ClassicalSMP& p, const Decomposition& d, Input y);

double inner_product(const StateVector& u, const StateVector& v);

}  // namespace qfp
