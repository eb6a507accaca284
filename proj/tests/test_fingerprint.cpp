#include <cmath>

#include <gtest/gtest.h>

#include "qfp/fingerprint.hpp"
#include "qfp/zoo.hpp"
#include "test_support.hpp"

using namespace qfp;
using oracle::kind_of;

namespace {

ClassicalSMP single_coin(unsigned n, unsigned ca, unsigned cb, std::vector<Message> alice, std::vector<Message> bob,
                         BooleanMatrix d) {
    return ClassicalSMP(n, 1, ca, cb, std::move(alice), std::move(bob), {std::move(d)});
}

std::size_t nonzeros(const StateVector& s) {
    return static_cast<std::size_t>(std::count_if(s.amps.begin(), s.amps.end(), [](double a) { return a != 0.0; }));
}

double payload_norm(const StateVector& s, const FingerprintLayout& layout) {
    double sq = 0.0;
    for (std::size_t i = 0; i < layout.coin_dim * layout.payload_dim; ++i) sq += s.amps[i] * s.amps[i];
    return std::sqrt(sq);
}

}  // namespace

TEST(alice_fingerprint_basic, examples) {
    const auto p = single_coin(1, 1, 1, {0, 1}, {0, 1}, BooleanMatrix::identity(2));
    const auto u = alice_fingerprint_basic(p, 0);
    EXPECT_EQ(u.dim(), 4u);
    EXPECT_EQ(u.amps[basic_layout(p).index(0, 0, 0)], 1.0);
    EXPECT_EQ(nonzeros(u), 1u);

    const auto q = random_protocol(2, 4, 2, 2, 0.5, 3);
    const auto u4 = alice_fingerprint_basic(q, 2);
    EXPECT_EQ(nonzeros(u4), 4u);
    for (double a : u4.amps)
        if (a != 0.0) EXPECT_DOUBLE_EQ(a, 0.5);

    const auto eq = build_equality_protocol({4, 64, 3, 1});
    for (Input x = 0; x < 16; ++x) EXPECT_NEAR(alice_fingerprint_basic(eq, x).norm(), 1.0, 1e-12);
    EXPECT_EQ(kind_of([&] { alice_fingerprint_basic(eq, 16); }), ErrorKind::IndexOutOfRange);
}

TEST(bob_fingerprint_basic, examples) {
    const auto zero = random_protocol(2, 3, 2, 2, 0.0, 1);
    const auto v0 = bob_fingerprint_basic(zero, 1);
    EXPECT_EQ(v0.amps[basic_layout(zero).index(kBasicJunkFlag, 0, 0)], 1.0);
    EXPECT_EQ(nonzeros(v0), 1u);

    const auto p = single_coin(1, 1, 1, {0, 1}, {0, 0}, BooleanMatrix::identity(2));
    const auto v = bob_fingerprint_basic(p, 0);
    const auto layout = basic_layout(p);
    EXPECT_NEAR(v.amps[layout.index(0, 0, 0)], 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(v.amps[layout.index(kBasicJunkFlag, 0, 0)], 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(nonzeros(v), 2u);
}

TEST(basic_fingerprints, unit_norm_and_identity_on_random_protocols) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        SeededRng pick(seed);
        const auto p = random_protocol(1 + static_cast<unsigned>(pick.uniform_index(4)), 1 + pick.uniform_index(16),
                                       static_cast<unsigned>(pick.uniform_index(4)),
                                       static_cast<unsigned>(pick.uniform_index(4)), pick.uniform01(), seed);
        const double root_ma = std::sqrt(static_cast<double>(p.alice_space()));
        for (Input x = 0; x < p.input_count(); ++x) {
            const auto u = alice_fingerprint_basic(p, x);
            ASSERT_NEAR(u.norm(), 1.0, 1e-12);
            for (Input y = 0; y < p.input_count(); ++y) {
                const auto v = bob_fingerprint_basic(p, y);
                ASSERT_NEAR(v.norm(), 1.0, 1e-12);
                const double expected = static_cast<double>(oracle::count_accepting_coins(p, x, y)) / p.coins();
                ASSERT_NEAR(inner_product(u, v) * root_ma, expected, 1e-10);
            }
        }
    }
}

TEST(decomposition_fingerprints, trivial_matches_basic_alice) {
    const auto p = pad_to_square(random_protocol(3, 5, 2, 2, 0.5, 8));
    const auto d = trivial_decomposition(as_real_family(p.referee_family()));
    const auto basic_l = basic_layout(p);
    const auto dec_l = decomposition_layout(p, d);
    ASSERT_EQ(basic_l.payload_dim, dec_l.payload_dim);
    for (Input x = 0; x < 8; ++x) {
        const auto a = alice_fingerprint_basic(p, x);
        const auto b = alice_fingerprint_decomp(p, d, x);
        for (std::size_t i = 0; i < basic_l.coin_dim * basic_l.payload_dim; ++i) ASSERT_NEAR(a.amps[i], b.amps[i], 1e-15);
        EXPECT_NEAR(b.amps[dec_l.index(kAliceJunkFlag, 0, 0)], 0.0, 1e-7);
    }
}

TEST(decomposition_fingerprints, trivial_matches_basic_bob_when_columns_are_full) {
    // cn(D_l) = sqrt(MA) for every l makes cw = sqrt(MA), the basic normalizer.
    const auto p = random_protocol(2, 4, 2, 2, 1.0, 2);
    const auto d = trivial_decomposition(as_real_family(p.referee_family()));
    EXPECT_DOUBLE_EQ(d.cw(), 2.0);
    for (Input y = 0; y < 4; ++y) {
        const auto a = bob_fingerprint_basic(p, y);
        const auto b = bob_fingerprint_decomp(p, d, y);
        for (std::size_t i = 0; i < 4 * 4; ++i) ASSERT_NEAR(a.amps[i], b.amps[i], 1e-15);
    }
}

TEST(decomposition_fingerprints, zero_column_puts_all_weight_on_junk) {
    // Bob's message 1 selects an all-zero column of D.
    const auto p = single_coin(1, 1, 1, {0, 1}, {1, 1}, BooleanMatrix{{1, 0}, {1, 0}});
    const auto d = svd_decomposition(as_real_family(p.referee_family()));
    const auto v = bob_fingerprint_decomp(p, d, 0);
    EXPECT_NEAR(v.amps[decomposition_layout(p, d).index(kBobJunkFlag, 0, 0)], 1.0, 1e-12);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
}

TEST(decomposition_fingerprints, identity_and_norms_on_random_protocols) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SeededRng pick(seed);
        const auto raw = random_protocol(1 + static_cast<unsigned>(pick.uniform_index(3)), 1 + pick.uniform_index(8),
                                         static_cast<unsigned>(pick.uniform_index(3)),
                                         static_cast<unsigned>(pick.uniform_index(3)), 0.6, seed);
        const auto p = pad_to_square(raw);
        const auto fam = as_real_family(p.referee_family());
        bool all_zero = true;
        for (const auto& d : fam) all_zero = all_zero && max_abs(d) == 0.0;
        if (all_zero) continue;
        for (const auto& d : {trivial_decomposition(fam), svd_decomposition(fam),
                              balance_decomposition(svd_decomposition(fam), 10).decomposition}) {
            const auto layout = decomposition_layout(p, d);
            for (Input x = 0; x < p.input_count(); ++x) {
                const auto u = alice_fingerprint_decomp(p, d, x);
                ASSERT_NEAR(u.norm(), 1.0, 1e-12);
                ASSERT_LE(payload_norm(u, layout), 1.0 + 1e-12);
                for (Input y = 0; y < p.input_count(); ++y) {
                    const auto v = bob_fingerprint_decomp(p, d, y);
                    ASSERT_NEAR(v.norm(), 1.0, 1e-12);
                    ASSERT_LE(payload_norm(v, layout), 1.0 + 1e-12);
                    // Junk blocks sit on different flags and never overlap.
                    const std::size_t block = layout.coin_dim * layout.payload_dim;
                    for (std::size_t i = block; i < layout.dim(); ++i) ASSERT_EQ(u.amps[i] * v.amps[i], 0.0);
                    const double p_acc = static_cast<double>(oracle::count_accepting_coins(raw, x, y)) / raw.coins();
                    ASSERT_NEAR(inner_product(u, v) * d.rw() * d.cw(), p_acc, 1e-8);
                }
            }
        }
    }
}

TEST(decomposition_fingerprints, errors) {
    const auto p = random_protocol(2, 2, 1, 1, 0.0, 1);
    const auto fam = as_real_family(p.referee_family());
    const auto zero = trivial_decomposition(fam);  // F_l = 0 so cw = 0
    EXPECT_EQ(kind_of([&] { bob_fingerprint_decomp(p, zero, 0); }), ErrorKind::DegenerateWidth);
    const Decomposition zero_e(fam, {{RealMatrix(2, 2), RealMatrix(2, 2)}, {RealMatrix(2, 2), RealMatrix(2, 2)}});
    EXPECT_EQ(kind_of([&] { alice_fingerprint_decomp(p, zero_e, 0); }), ErrorKind::DegenerateWidth);

    const auto other = random_protocol(2, 2, 1, 1, 1.0, 1);
    EXPECT_EQ(kind_of([&] { alice_fingerprint_decomp(other, zero, 0); }), ErrorKind::DecompositionMismatch);
    const auto wide = random_protocol(2, 2, 1, 2, 0.5, 1);
    EXPECT_EQ(kind_of([&] { alice_fingerprint_decomp(wide, zero, 0); }), ErrorKind::DecompositionMismatch);
}

TEST(inner_product, basics) {
    StateVector e0{{1, 0, 0}}, e1{{0, 1, 0}};
    EXPECT_EQ(inner_product(e0, e1), 0.0);
    EXPECT_EQ(kind_of([&] { inner_product(e0, StateVector{{1, 0}}); }), ErrorKind::DimensionMismatch);
    EXPECT_EQ(e0.as_column(), (RealMatrix{{1}, {0}, {0}}));
}
