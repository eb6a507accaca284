#include "qfp/smp.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "qfp/error.hpp"

namespace qfp {

namespace {

constexpr unsigned kMaxInputBits = 20;
constexpr unsigned kMaxMessageBits = 16;

}  // namespace

ClassicalSMP::ClassicalSMP(unsigned n, std::size_t coins, unsigned alice_bits, unsigned bob_bits,
                           std::vector<Message> alice_msg, std::vector<Message> bob_msg,
                           std::vector<BooleanMatrix> referee)
    : n_(n), coins_(coins), ca_(alice_bits), cb_(bob_bits), alice_msg_(std::move(alice_msg)),
      bob_msg_(std::move(bob_msg)), referee_(std::move(referee)) {
    if (n_ > kMaxInputBits) fail(ErrorKind::InvalidArgument, "input length n is above the supported maximum");
    if (ca_ > kMaxMessageBits || cb_ > kMaxMessageBits)
        fail(ErrorKind::InvalidArgument, "message length is above the supported maximum");
    if (coins_ == 0) fail(ErrorKind::InvalidArgument, "protocol needs at least one coin value");
    const std::size_t table = static_cast<std::size_t>(input_count()) * coins_;
    if (alice_msg_.size() != table || bob_msg_.size() != table)
        fail(ErrorKind::DimensionMismatch, "message tables must have 2^n x L entries");
    if (referee_.size() != coins_) fail(ErrorKind::DimensionMismatch, "need exactly one referee matrix per coin value");
    for (const auto& d : referee_)
        if (d.rows() != alice_space() || d.cols() != bob_space())
            fail(ErrorKind::DimensionMismatch, "referee matrix must be MA x MB");
    if (std::any_of(alice_msg_.begin(), alice_msg_.end(), [&](Message a) { return a >= alice_space(); }))
        fail(ErrorKind::IndexOutOfRange, "Alice message out of range");
    if (std::any_of(bob_msg_.begin(), bob_msg_.end(), [&](Message b) { return b >= bob_space(); }))
        fail(ErrorKind::IndexOutOfRange, "Bob message out of range");
}

Message ClassicalSMP::alice_message(Input x, std::size_t l) const {
    if (x >= input_count() || l >= coins_) fail(ErrorKind::IndexOutOfRange, "alice_message index out of range");
    return alice_msg_[x * coins_ + l];
}

Message ClassicalSMP::bob_message(Input y, std::size_t l) const {
    if (y >= input_count() || l >= coins_) fail(ErrorKind::IndexOutOfRange, "bob_message index out of range");
    return bob_msg_[y * coins_ + l];
}

TargetFunction TargetFunction::from(unsigned n, bool (*f)(Input, Input)) {
    TargetFunction t{n, std::vector<std::uint8_t>(std::size_t{1} << (2 * n))};
    const Input count = Input{1} << n;
    for (Input x = 0; x < count; ++x)
        for (Input y = 0; y < count; ++y) t.table[(x << n) + y] = f(x, y) ? 1 : 0;
    return t;
}

TargetFunction equality_function(unsigned n) {
    return TargetFunction::from(n, [](Input x, Input y) { return x == y; });
}

TargetFunction inner_product_function(unsigned n) {
    return TargetFunction::from(n, [](Input x, Input y) { return (std::popcount(x & y) & 1) != 0; });
}

void CorrectnessThresholds::check() const {
    if (!(alpha0 > 0.0 && alpha0 < 0.5 && alpha1 > 0.5 && alpha1 < 1.0 && alpha0 < alpha1))
        fail(ErrorKind::InvalidConfig, "thresholds need 0 < alpha0 < 1/2 < alpha1 < 1");
}

std::size_t accepting_coins(const ClassicalSMP& p, Input x, Input y) {
    if (x >= p.input_count() || y >= p.input_count()) fail(ErrorKind::IndexOutOfRange, "input out of range");
    std::size_t count = 0;
    for (std::size_t l = 0; l < p.coins(); ++l)
        if (p.referee(l)(p.alice_message(x, l), p.bob_message(y, l))) ++count;
    return count;
}

double acceptance_probability(const ClassicalSMP& p, Input x, Input y) {
    return static_cast<double>(accepting_coins(p, x, y)) / static_cast<double>(p.coins());
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["valid"] = valid();
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : violations)
        j["violations"].push_back({{"x", v.x}, {"y", v.y}, {"f", v.f ? 1 : 0}, {"p_acc", v.p_acc}});
    return j.dump();
}

ValidationReport validate(const ClassicalSMP& p, const TargetFunction& f, const CorrectnessThresholds& th) {
    if (p.n() != f.n) fail(ErrorKind::DimensionMismatch, "protocol and target function have different n");
    ValidationReport report;
    for (Input x = 0; x < p.input_count(); ++x)
        for (Input y = 0; y < p.input_count(); ++y) {
            const double acc = acceptance_probability(p, x, y);
            const bool fx = f(x, y);
            if ((fx && acc < th.alpha1) || (!fx && acc > th.alpha0)) report.violations.push_back({x, y, fx, acc});
        }
    return report;
}

ClassicalSMP pad_to_square(const ClassicalSMP& p) {
    if (p.alice_bits() == p.bob_bits()) return p;
    const unsigned c = std::max(p.alice_bits(), p.bob_bits());
    const std::size_t m = std::size_t{1} << c;
    std::vector<BooleanMatrix> padded;
    padded.reserve(p.coins());
    for (const auto& d : p.referee_family()) padded.emplace_back(zero_pad(d.real(), m, m));
    return ClassicalSMP(p.n(), p.coins(), c, c, p.alice_table(), p.bob_table(), std::move(padded));
}

bool sample_classical_run(const ClassicalSMP& p, Input x, Input y, SeededRng& rng) {
    const std::size_t l = rng.uniform_index(p.coins());
    return p.referee(l)(p.alice_message(x, l), p.bob_message(y, l));
}

namespace {

std::string expect_line(std::istream& in, const char* what) {
    std::string line;
    if (!detail::next_content_line(in, line)) fail(ErrorKind::ParseError, std::string("unexpected end of protocol, expected ") + what);
    return line;
}

std::uint64_t read_field(std::istream& in, const std::string& key) {
    std::istringstream ss(expect_line(in, key.c_str()));
    std::string k;
    long long v = -1;
    std::string extra;
    if (!(ss >> k >> v) || k != key || v < 0 || (ss >> extra))
        fail(ErrorKind::ParseError, "expected header line '" + key + " <non-negative integer>'");
    return static_cast<std::uint64_t>(v);
}

void read_keyword(std::istream& in, const std::string& key) {
    std::istringstream ss(expect_line(in, key.c_str()));
    std::string k, extra;
    if (!(ss >> k) || k != key || (ss >> extra)) fail(ErrorKind::ParseError, "expected section '" + key + "'");
}

std::vector<Message> read_table(std::istream& in, std::uint64_t inputs, std::uint64_t coins, const char* who) {
    std::vector<Message> out;
    out.reserve(inputs * coins);
    for (std::uint64_t x = 0; x < inputs; ++x) {
        std::istringstream ss(expect_line(in, who));
        std::string tok;
        std::uint64_t count = 0;
        while (ss >> tok) {
            std::istringstream ts(tok);
            long long v = -1;
            if (!(ts >> v) || !ts.eof() || v < 0) fail(ErrorKind::ParseError, std::string("bad ") + who + " message '" + tok + "'");
            out.push_back(static_cast<Message>(v));
            ++count;
        }
        if (count != coins)
            fail(ErrorKind::ParseError, std::string(who) + " table row " + std::to_string(x) + " needs " + std::to_string(coins) + " entries");
    }
    return out;
}

}  // namespace

ClassicalSMP read_protocol(std::istream& in) {
    const auto n = read_field(in, "n");
    const auto coins = read_field(in, "L");
    const auto ca = read_field(in, "cA");
    const auto cb = read_field(in, "cB");
    if (n > kMaxInputBits || ca > kMaxMessageBits || cb > kMaxMessageBits || coins == 0)
        fail(ErrorKind::ParseError, "protocol header out of supported range");
    const std::uint64_t inputs = std::uint64_t{1} << n;
    read_keyword(in, "alice");
    auto alice = read_table(in, inputs, coins, "alice");
    read_keyword(in, "bob");
    auto bob = read_table(in, inputs, coins, "bob");
    read_keyword(in, "referee");
    std::vector<BooleanMatrix> referee;
    for (std::uint64_t l = 0; l < coins; ++l) referee.push_back(read_boolean_matrix(in));
    try {
        return ClassicalSMP(static_cast<unsigned>(n), coins, static_cast<unsigned>(ca), static_cast<unsigned>(cb),
                            std::move(alice), std::move(bob), std::move(referee));
    } catch (const Error& e) {
        fail(ErrorKind::ParseError, std::string("inconsistent protocol: ") + e.what());
    }
}

ClassicalSMP read_protocol_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
    return read_protocol(in);
}

void write_protocol(std::ostream& out, const ClassicalSMP& p) {
    out << "n " << p.n() << "\nL " << p.coins() << "\ncA " << p.alice_bits() << "\ncB " << p.bob_bits() << '\n';
    auto table = [&](const char* name, const std::vector<Message>& t) {
        out << name << '\n';
        for (Input x = 0; x < p.input_count(); ++x) {
            for (std::size_t l = 0; l < p.coins(); ++l) out << (l ? " " : "") << t[x * p.coins() + l];
            out << '\n';
        }
    };
    table("alice", p.alice_table());
    table("bob", p.bob_table());
    out << "referee\n";
    for (std::size_t l = 0; l < p.coins(); ++l) {
        out << "# coin " << l << '\n';
        write_matrix(out, p.referee(l).real());
    }
}

}  // namespace qfp
