#include "qfp/referee.hpp"

#include <bit>
#include <cmath>

#include "json.hpp"
#include "qfp/error.hpp"

namespace qfp {

namespace {

std::int64_t ceil_log2(std::size_t v) { return v <= 1 ? 0 : std::bit_width(v - 1); }

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

FingerprintLayout layout_for(const ClassicalSMP& p, const FingerprintMode& mode) {
    return std::visit(overloaded{[&](const BasicMode&) { return basic_layout(p); },
                                 [&](const DecompositionMode& m) { return decomposition_layout(p, m.decomposition); }},
                      mode);
}

std::int64_t qubits_for(const FingerprintLayout& layout) {
    return ceil_log2(layout.flag_dim) + ceil_log2(layout.coin_dim) + ceil_log2(layout.payload_dim);
}

}  // namespace

RefereeConfig RefereeConfig::for_mode(const ClassicalSMP& p, const FingerprintMode& mode,
                                      const CorrectnessThresholds& th, double delta) {
    RefereeConfig cfg;
    cfg.alpha0 = th.alpha0;
    cfg.alpha1 = th.alpha1;
    cfg.delta = delta;
    cfg.g = std::visit(overloaded{[&](const BasicMode&) { return std::sqrt(static_cast<double>(p.alice_space())); },
                                  [&](const DecompositionMode& m) { return m.decomposition.rcw(); }},
                       mode);
    return cfg;
}

void RefereeConfig::check() const {
    if (!(alpha0 > 0.0 && alpha0 < alpha1 && alpha1 < 1.0)) fail(ErrorKind::InvalidConfig, "need 0 < alpha0 < alpha1 < 1");
    if (!(g > 0.0) || !std::isfinite(g)) fail(ErrorKind::InvalidConfig, "gap divisor g must be positive");
    if (!(delta > 0.0 && delta < 0.5)) fail(ErrorKind::InvalidConfig, "need 0 < delta < 1/2");
    if (copies && *copies < 1) fail(ErrorKind::InvalidConfig, "copy override must be at least 1");
}

double swap_accept_prob(double overlap) { return 0.5 * (1.0 + overlap * overlap); }

double swap_accept_prob(const StateVector& u, const StateVector& v) {
    if (u.dim() != v.dim()) fail(ErrorKind::DimensionMismatch, "SWAP test on states of different dimension");
    if (std::abs(u.norm() - 1.0) > 1e-9 || std::abs(v.norm() - 1.0) > 1e-9)
        fail(ErrorKind::NotNormalized, "SWAP test needs unit vectors");
    return swap_accept_prob(inner_product(u, v));
}

double half_gap(const RefereeConfig& cfg) {
    return (cfg.alpha1 * cfg.alpha1 - cfg.alpha0 * cfg.alpha0) / (4.0 * cfg.g * cfg.g);
}

std::int64_t required_copies(const RefereeConfig& cfg) {
    cfg.check();
    const double t = half_gap(cfg);
    return static_cast<std::int64_t>(std::ceil(std::log(2.0 / cfg.delta) / (2.0 * t * t)));
}

std::int64_t effective_copies(const RefereeConfig& cfg) {
    cfg.check();
    return cfg.copies ? *cfg.copies : required_copies(cfg);
}

double decision_threshold(const RefereeConfig& cfg) {
    const double m = (cfg.alpha1 * cfg.alpha1 + cfg.alpha0 * cfg.alpha0) / 2.0 / (cfg.g * cfg.g);
    return (1.0 + m) / 2.0;
}

bool decide(double zero_fraction, const RefereeConfig& cfg) { return zero_fraction >= decision_threshold(cfg); }

bool run_swap_tests(double overlap, const RefereeConfig& cfg, SeededRng& rng, double* zero_fraction) {
    const std::int64_t copies = effective_copies(cfg);
    const double p0 = swap_accept_prob(overlap);
    std::int64_t zeros = 0;
    for (std::int64_t i = 0; i < copies; ++i) zeros += rng.bernoulli(p0) ? 1 : 0;
    const double frac = static_cast<double>(zeros) / static_cast<double>(copies);
    if (zero_fraction) *zero_fraction = frac;
    return decide(frac, cfg);
}

double fingerprint_overlap(const ClassicalSMP& p, const FingerprintMode& mode, Input x, Input y) {
    return std::visit(overloaded{[&](const BasicMode&) {
                                     return inner_product(alice_fingerprint_basic(p, x), bob_fingerprint_basic(p, y));
                                 },
                                 [&](const DecompositionMode& m) {
                                     const ClassicalSMP sq = pad_to_square(p);
                                     return inner_product(alice_fingerprint_decomp(sq, m.decomposition, x),
                                                          bob_fingerprint_decomp(sq, m.decomposition, y));
                                 }},
                      mode);
}

SimulationStats cost_report(const ClassicalSMP& p, const FingerprintMode& mode, const RefereeConfig& cfg) {
    SimulationStats s;
    s.copies = effective_copies(cfg);
    const bool decomposition = std::holds_alternative<DecompositionMode>(mode);
    const FingerprintLayout layout = layout_for(decomposition ? pad_to_square(p) : p, mode);
    s.qubits_alice = qubits_for(layout);
    s.qubits_bob = qubits_for(layout);
    s.total_qubits = s.copies * (s.qubits_alice + s.qubits_bob);
    s.bound_formula_value = cfg.g * cfg.g *
                            static_cast<double>(p.alice_bits() + p.bob_bits() + ceil_log2(p.coins()) + 2);
    return s;
}

SimulationStats simulate_quantum_protocol(const ClassicalSMP& p, const FingerprintMode& mode, Input x, Input y,
                                          const RefereeConfig& cfg, SeededRng& rng) {
    SimulationStats s = cost_report(p, mode, cfg);
    const double overlap = fingerprint_overlap(p, mode, x, y);
    s.output = run_swap_tests(overlap, cfg, rng, &s.swap_zero_fraction);
    return s;
}

std::string SimulationStats::to_json() const {
    nlohmann::ordered_json j{{"output", output ? 1 : 0},
                             {"swap_zero_fraction", swap_zero_fraction},
                             {"copies", copies},
                             {"qubits_alice", qubits_alice},
                             {"qubits_bob", qubits_bob},
                             {"total_qubits", total_qubits},
                             {"bound_formula_value", bound_formula_value}};
    return j.dump();
}

}  // namespace qfp
