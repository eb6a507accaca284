#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "qfp/fingerprint.hpp"
#include "qfp/rng.hpp"
#include "qfp/smp.hpp"
#include "qfp/width.hpp"

namespace qfp {

struct BasicMode {};
// Fingerprints from a decomposition of the square-padded referee family.
struct DecompositionMode {
    Decomposition decomposition;
};
using FingerprintMode = std::variant<BasicMode, DecompositionMode>;

struct RefereeConfig {
    double g = 1.0;  // inner products are p_acc / g
    double alpha0 = 1.0 / 3.0;
    double alpha1 = 2.0 / 3.0;
    double delta = 0.25;
    std::optional<std::int64_t> copies;  // overrides required_copies when set

    // g = sqrt(MA) in basic mode, rw * cw in decomposition mode.
    static RefereeConfig for_mode(const ClassicalSMP& p, const FingerprintMode& mode, const CorrectnessThresholds& th,
                                  double delta);
    void check() const;
};

// Pr[SWAP test outputs 0] = (1 + <u|v>^2) / 2. Both states must be unit.
double swap_accept_prob(const StateVector& u, const StateVector& v);
double swap_accept_prob(double overlap);

// Half the gap between the promise cases' SWAP acceptance probabilities,
// (alpha1^2 - alpha0^2) / (4 g^2).
double half_gap(const RefereeConfig& cfg);
// ceil(ln(2 / delta) / (2 t^2)) with t = half_gap(cfg) (Hoeffding).
std::int64_t required_copies(const RefereeConfig& cfg);
// Copies used by a run: the override if present, else required_copies.
std::int64_t effective_copies(const RefereeConfig& cfg);

// Zero-fraction threshold (1 + m) / 2 with m = (alpha1^2 + alpha0^2) / (2 g^2).
double decision_threshold(const RefereeConfig& cfg);
bool decide(double zero_fraction, const RefereeConfig& cfg);

struct SimulationStats {
    bool output = false;
    double swap_zero_fraction = 0.0;
    std::int64_t copies = 0;
    std::int64_t qubits_alice = 0;
    std::int64_t qubits_bob = 0;
    std::int64_t total_qubits = 0;
    double bound_formula_value = 0.0;  // g^2 (cA + cB + ceil(log2 L) + 2)

    std::string to_json() const;
};

// Runs `copies` independent SWAP tests on states with overlap `overlap` and
// applies decide(). The referee only sees the outcomes.
bool run_swap_tests(double overlap, const RefereeConfig& cfg, SeededRng& rng, double* zero_fraction = nullptr);

// Overlap <u_x|v_y> of the fingerprints the mode produces.
double fingerprint_overlap(const ClassicalSMP& p, const FingerprintMode& mode, Input x, Input y);

SimulationStats simulate_quantum_protocol(const ClassicalSMP& p, const FingerprintMode& mode, Input x, Input y,
                                          const RefereeConfig& cfg, SeededRng& rng);

// Qubit and copy accounting without sampling.
SimulationStats cost_report(const ClassicalSMP& p, const FingerprintMode& mode, const RefereeConfig& cfg);

}  // namespace qfp
