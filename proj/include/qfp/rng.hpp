#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace qfp {

// Seeded mt19937_64 stream. Child streams are derived through std::seed_seq
// from (seed, labels...), so a labeled stream does not depend on how many
// draws were taken from any other stream.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(make_engine(seed, {})) {}

    std::uint64_t seed() const noexcept { return seed_; }

    SeededRng split(std::initializer_list<std::uint64_t> labels) const {
        std::vector<std::uint64_t> path = path_;
        path.insert(path.end(), labels.begin(), labels.end());
        return SeededRng(seed_, std::move(path));
    }

    // Uniform on [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    SeededRng(std::uint64_t seed, std::vector<std::uint64_t> path)
        : seed_(seed), path_(std::move(path)), engine_(make_engine(seed, path_)) {}

    static std::mt19937_64 make_engine(std::uint64_t seed, const std::vector<std::uint64_t>& labels) {
        std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                         static_cast<std::uint32_t>(labels.size())};
        for (auto l : labels) {
            words.push_back(static_cast<std::uint32_t>(l));
            words.push_back(static_cast<std::uint32_t>(l >> 32));
        }
        std::seed_seq seq(words.begin(), words.end());
        return std::mt19937_64(seq);
    }

    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
    std::mt19937_64 engine_;
};

}  // namespace qfp
