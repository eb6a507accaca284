#include "qfp/fingerprint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfp/error.hpp"

namespace qfp {

namespace {

// Puts the missing norm on `flag`'s first basis index.
void pad_with_junk(StateVector& s, const FingerprintLayout& layout, std::size_t flag) {
    const double sq = std::inner_product(s.amps.begin(), s.amps.end(), s.amps.begin(), 0.0);
    s.amps[layout.index(flag, 0, 0)] = std::sqrt(std::max(0.0, 1.0 - sq));
}

void check_decomposition(const ClassicalSMP& p, const Decomposition& d) {
    if (p.alice_space() != p.bob_space())
        fail(ErrorKind::DecompositionMismatch, "decomposition fingerprints need the square-padded protocol");
    if (d.coins() != p.coins() || d.size() != p.alice_space())
        fail(ErrorKind::DecompositionMismatch, "decomposition does not match the protocol's referee family");
    for (std::size_t l = 0; l < p.coins(); ++l)
        if (d.family()[l] != p.referee(l).real())
            fail(ErrorKind::DecompositionMismatch, "decomposition family differs from referee matrix " + std::to_string(l));
}

}  // namespace

double StateVector::norm() const { return std::sqrt(std::inner_product(amps.begin(), amps.end(), amps.begin(), 0.0)); }

RealMatrix StateVector::as_column() const { return RealMatrix(amps.size(), 1, amps); }

FingerprintLayout basic_layout(const ClassicalSMP& p) { return {2, p.coins(), p.alice_space()}; }

FingerprintLayout decomposition_layout(const ClassicalSMP& p, const Decomposition& d) {
    return {4, p.coins(), d.inner_dim()};
}

StateVector alice_fingerprint_basic(const ClassicalSMP& p, Input x) {
    if (x >= p.input_count()) fail(ErrorKind::IndexOutOfRange, "Alice input out of range");
    const auto layout = basic_layout(p);
    StateVector s{std::vector<double>(layout.dim(), 0.0)};
    const double amp = 1.0 / std::sqrt(static_cast<double>(p.coins()));
    for (std::size_t l = 0; l < p.coins(); ++l) s.amps[layout.index(kPayloadFlag, l, p.alice_message(x, l))] = amp;
    return s;
}

StateVector bob_fingerprint_basic(const ClassicalSMP& p, Input y) {
    if (y >= p.input_count()) fail(ErrorKind::IndexOutOfRange, "Bob input out of range");
    const auto layout = basic_layout(p);
    StateVector s{std::vector<double>(layout.dim(), 0.0)};
    const double scale = 1.0 / std::sqrt(static_cast<double>(p.coins() * p.alice_space()));
    for (std::size_t l = 0; l < p.coins(); ++l) {
        const Message b = p.bob_message(y, l);
        const auto& d = p.referee(l);
        for (std::size_t a = 0; a < p.alice_space(); ++a)
            if (d(a, b)) s.amps[layout.index(kPayloadFlag, l, a)] = scale;
    }
    pad_with_junk(s, layout, kBasicJunkFlag);
    return s;
}

StateVector alice_fingerprint_decomp(const ClassicalSMP& p, const Decomposition& d, Input x) {
    if (x >= p.input_count()) fail(ErrorKind::IndexOutOfRange, "Alice input out of range");
    check_decomposition(p, d);
    if (d.rw() == 0.0) fail(ErrorKind::DegenerateWidth, "row width of the decomposition is zero");
    const auto layout = decomposition_layout(p, d);
    StateVector s{std::vector<double>(layout.dim(), 0.0)};
    const double scale = 1.0 / (d.rw() * std::sqrt(static_cast<double>(p.coins())));
    for (std::size_t l = 0; l < p.coins(); ++l) {
        const auto row = d.factor(l).e.row(p.alice_message(x, l));
        for (std::size_t k = 0; k < row.size(); ++k) s.amps[layout.index(kPayloadFlag, l, k)] = scale * row[k];
    }
    pad_with_junk(s, layout, kAliceJunkFlag);
    return s;
}

StateVector bob_fingerprint_decomp(const ClassicalSMP& p, const Decomposition& d, Input y) {
    if (y >= p.input_count()) fail(ErrorKind::IndexOutOfRange, "Bob input out of range");
    check_decomposition(p, d);
    if (d.cw() == 0.0) fail(ErrorKind::DegenerateWidth, "column width of the decomposition is zero");
    const auto layout = decomposition_layout(p, d);
    StateVector s{std::vector<double>(layout.dim(), 0.0)};
    const double scale = 1.0 / (d.cw() * std::sqrt(static_cast<double>(p.coins())));
    for (std::size_t l = 0; l < p.coins(); ++l) {
        const auto& f = d.factor(l).f;
        const Message b = p.bob_message(y, l);
        for (std::size_t k = 0; k < f.rows(); ++k) s.amps[layout.index(kPayloadFlag, l, k)] = scale * f(k, b);
    }
    pad_with_junk(s, layout, kBobJunkFlag);
    return s;
}

double inner_product(const StateVector& u, const StateVector& v) {
    if (u.dim() != v.dim()) fail(ErrorKind::DimensionMismatch, "state vectors have different dimensions");
    return std::inner_product(u.amps.begin(), u.amps.end(), v.amps.begin(), 0.0);
}

}  // namespace qfp
