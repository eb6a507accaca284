#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qfp/matrix.hpp"
#include "qfp/rng.hpp"

namespace qfp {

using Input = std::uint64_t;    // an n-bit input string, bit i = coordinate i
using Message = std::uint32_t;  // index into a party's message space

// Public-coin simultaneous message protocol with the coin uniform on [L].
// Message tables are explicit: alice_msg[x * L + l] = a(x, l).
class ClassicalSMP {
public:
    ClassicalSMP(unsigned n, std::size_t coins, unsigned alice_bits, unsigned bob_bits,
                 std::vector<Message> alice_msg, std::vector<Message> bob_msg,
                 std::vector<BooleanMatrix> referee);

    unsigned n() const noexcept { return n_; }
    std::size_t coins() const noexcept { return coins_; }
    unsigned alice_bits() const noexcept { return ca_; }
    unsigned bob_bits() const noexcept { return cb_; }
    // MA = 2^cA and MB = 2^cB.
    std::size_t alice_space() const noexcept { return std::size_t{1} << ca_; }
    std::size_t bob_space() const noexcept { return std::size_t{1} << cb_; }
    std::uint64_t input_count() const noexcept { return std::uint64_t{1} << n_; }

    Message alice_message(Input x, std::size_t l) const;
    Message bob_message(Input y, std::size_t l) const;
    const BooleanMatrix& referee(std::size_t l) const { return referee_.at(l); }
    const std::vector<BooleanMatrix>& referee_family() const noexcept { return referee_; }

    const std::vector<Message>& alice_table() const noexcept { return alice_msg_; }
    const std::vector<Message>& bob_table() const noexcept { return bob_msg_; }

    friend bool operator==(const ClassicalSMP&, const ClassicalSMP&) = default;

private:
    unsigned n_;
    std::size_t coins_;
    unsigned ca_;
    unsigned cb_;
    std::vector<Message> alice_msg_;
    std::vector<Message> bob_msg_;
    std::vector<BooleanMatrix> referee_;
};

// f(x, y) as an explicit 2^n x 2^n table.
struct TargetFunction {
    unsigned n = 0;
    std::vector<std::uint8_t> table;  // table[x * 2^n + y]

    static TargetFunction from(unsigned n, bool (*f)(Input, Input));
    bool operator()(Input x, Input y) const { return table[(x << n) + y] != 0; }
};

TargetFunction equality_function(unsigned n);
TargetFunction inner_product_function(unsigned n);

struct CorrectnessThresholds {
    double alpha0 = 1.0 / 3.0;  // max acceptance allowed when f = 0
    double alpha1 = 2.0 / 3.0;  // min acceptance required when f = 1

    static CorrectnessThresholds newman() { return {1.0 / 3.0, 2.0 / 3.0}; }
    static CorrectnessThresholds quarter() { return {0.25, 0.75}; }
    void check() const;
};

// Number of coins l with D_l(a(x,l), b(y,l)) = 1.
std::size_t accepting_coins(const ClassicalSMP& p, Input x, Input y);
// accepting_coins / L.
double acceptance_probability(const ClassicalSMP& p, Input x, Input y);

struct Violation {
    Input x;
    Input y;
    bool f;
    double p_acc;
};

struct ValidationReport {
    std::vector<Violation> violations;  // sorted by (x, y)
    bool valid() const noexcept { return violations.empty(); }
    std::string to_json() const;
};

ValidationReport validate(const ClassicalSMP& p, const TargetFunction& f, const CorrectnessThresholds& th);

// Zero-pads every referee matrix to M x M with M = max(MA, MB); both message
// lengths become max(cA, cB). Message tables are unchanged.
ClassicalSMP pad_to_square(const ClassicalSMP& p);

bool sample_classical_run(const ClassicalSMP& p, Input x, Input y, SeededRng& rng);

// Protocol text format:
//   n <bits>
//   L <coins>
//   cA <bits>
//   cB <bits>
//   alice            followed by 2^n lines of L messages
//   bob              followed by 2^n lines of L messages
//   referee          followed by L matrices in the matrix text format
ClassicalSMP read_protocol(std::istream& in);
ClassicalSMP read_protocol_file(const std::string& path);
void write_protocol(std::ostream& out, const ClassicalSMP& p);

}  // namespace qfp
