#include "qfp/zoo.hpp"

#include <bit>

#include "qfp/error.hpp"
#include "qfp/rng.hpp"

namespace qfp {

namespace {

ClassicalSMP equality_attempt(const EqualityParams& params, SeededRng rng) {
    const std::uint64_t inputs = std::uint64_t{1} << params.n;
    const std::size_t coins = params.coins;
    std::vector<std::uint64_t> hashes(coins * params.hash_bits);
    for (auto& r : hashes) r = rng.uniform_index(inputs);

    std::vector<Message> table(inputs * coins);
    for (std::uint64_t x = 0; x < inputs; ++x)
        for (std::size_t l = 0; l < coins; ++l) {
            Message msg = 0;
            for (unsigned i = 0; i < params.hash_bits; ++i)
                msg |= static_cast<Message>(std::popcount(x & hashes[l * params.hash_bits + i]) & 1) << i;
            table[x * coins + l] = msg;
        }
    std::vector<BooleanMatrix> referee(coins, BooleanMatrix::identity(std::size_t{1} << params.hash_bits));
    return ClassicalSMP(params.n, coins, params.hash_bits, params.hash_bits, table, table, std::move(referee));
}

}  // namespace

ClassicalSMP build_equality_protocol(const EqualityParams& params, const CorrectnessThresholds& thresholds) {
    if (params.hash_bits < 1 || params.hash_bits > 8) fail(ErrorKind::InvalidArgument, "hash bits t must be in [1, 8]");
    if (params.coins < 1) fail(ErrorKind::InvalidArgument, "coin count L must be positive");
    if (params.n < 1 || params.n > 14) fail(ErrorKind::InvalidArgument, "equality protocol supports 1 <= n <= 14");
    thresholds.check();
    const SeededRng master(params.seed);
    const TargetFunction eq = equality_function(params.n);
    for (int attempt = 0; attempt < kEqualityReseedAttempts; ++attempt) {
        ClassicalSMP p = equality_attempt(params, master.split({static_cast<std::uint64_t>(attempt)}));
        if (validate(p, eq, thresholds).valid()) return p;
    }
    fail(ErrorKind::ValidationExhausted, "no seed produced a valid equality protocol; increase L or t");
}

BooleanMatrix ip_matrix(unsigned n) {
    if (n < 1 || n > 7) fail(ErrorKind::InvalidArgument, "ip_matrix supports 1 <= n <= 7");
    const std::size_t m = std::size_t{1} << n;
    BooleanMatrix d(m, m);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) d.set(x, y, (std::popcount(x & y) & 1) != 0);
    return d;
}

RealMatrix ip_signed_matrix(unsigned n) {
    const BooleanMatrix d = ip_matrix(n);
    return 2.0 * d.real() - RealMatrix::ones(d.rows(), d.cols());
}

BooleanMatrix first_column_ones(std::size_t m) {
    if (m < 1) fail(ErrorKind::InvalidArgument, "first_column_ones needs M >= 1");
    BooleanMatrix q(m, m);
    for (std::size_t a = 0; a < m; ++a) q.set(a, 0, true);
    return q;
}

BooleanMatrix random_boolean_matrix(std::size_t rows, std::size_t cols, double density, SeededRng& rng) {
    if (!(density >= 0.0 && density <= 1.0)) fail(ErrorKind::InvalidArgument, "density must be in [0, 1]");
    BooleanMatrix d(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) d.set(r, c, rng.bernoulli(density));
    return d;
}

ClassicalSMP random_protocol(unsigned n, std::size_t coins, unsigned alice_bits, unsigned bob_bits, double density,
                             std::uint64_t seed) {
    if (n > 6 || coins < 1 || coins > 64 || alice_bits > 4 || bob_bits > 4)
        fail(ErrorKind::InvalidArgument, "random_protocol supports n <= 6, 1 <= L <= 64, cA, cB <= 4");
    SeededRng rng(seed);
    const std::uint64_t inputs = std::uint64_t{1} << n;
    const std::size_t ma = std::size_t{1} << alice_bits;
    const std::size_t mb = std::size_t{1} << bob_bits;
    std::vector<Message> alice(inputs * coins), bob(inputs * coins);
    for (auto& a : alice) a = static_cast<Message>(rng.uniform_index(ma));
    for (auto& b : bob) b = static_cast<Message>(rng.uniform_index(mb));
    std::vector<BooleanMatrix> referee;
    referee.reserve(coins);
    for (std::size_t l = 0; l < coins; ++l) referee.push_back(random_boolean_matrix(ma, mb, density, rng));
    return ClassicalSMP(n, coins, alice_bits, bob_bits, std::move(alice), std::move(bob), std::move(referee));
}

}  // namespace qfp
