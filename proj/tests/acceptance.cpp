// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "qfp/fingerprint.hpp"
#include "qfp/linalg.hpp"
#include "qfp/referee.hpp"
#include "qfp/width.hpp"
#include "qfp/zoo.hpp"
#include "test_support.hpp"

using namespace qfp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Fixed corpus shared by criteria 1 and 2.
std::vector<ClassicalSMP> random_protocols() {
    std::vector<ClassicalSMP> out;
    SeededRng pick(20240611);
    for (std::uint64_t i = 0; i < 50; ++i) {
        const unsigned n = 1 + static_cast<unsigned>(pick.uniform_index(4));
        const std::size_t coins = 1 + pick.uniform_index(16);
        const unsigned ca = static_cast<unsigned>(pick.uniform_index(4));
        const unsigned cb = static_cast<unsigned>(pick.uniform_index(4));
        const double density = 0.2 + 0.6 * pick.uniform01();
        out.push_back(random_protocol(n, coins, ca, cb, density, 1000 + i));
    }
    return out;
}

std::vector<RealMatrix> random_boolean_family(std::uint64_t seed, std::size_t max_m) {
    std::vector<RealMatrix> out;
    SeededRng rng(seed);
    for (int i = 0; i < 100; ++i) {
        const std::size_t m = 1 + rng.uniform_index(max_m);
        const double density = 0.1 + 0.8 * rng.uniform01();
        out.push_back(random_boolean_matrix(m, m, density, rng).real());
    }
    return out;
}

double p_acc(const ClassicalSMP& p, Input x, Input y) {
    return static_cast<double>(oracle::count_accepting_coins(p, x, y)) / static_cast<double>(p.coins());
}

Outcome criterion1(const std::vector<ClassicalSMP>& protocols) {
    double worst = 0.0;
    for (const auto& p : protocols) {
        const double root_ma = std::sqrt(static_cast<double>(p.alice_space()));
        std::vector<StateVector> bobs;
        for (Input y = 0; y < p.input_count(); ++y) bobs.push_back(bob_fingerprint_basic(p, y));
        for (Input x = 0; x < p.input_count(); ++x) {
            const auto u = alice_fingerprint_basic(p, x);
            for (Input y = 0; y < p.input_count(); ++y)
                worst = std::max(worst, std::abs(inner_product(u, bobs[y]) * root_ma - p_acc(p, x, y)));
        }
    }
    return {worst <= 1e-10, "max |<u|v> sqrt(MA) - p_acc| = " + fmt(worst) + " (tol 1e-10)"};
}

Outcome criterion2(const std::vector<ClassicalSMP>& protocols) {
    double worst = 0.0;
    int checked = 0, skipped = 0;
    for (const auto& raw : protocols) {
        const auto p = pad_to_square(raw);
        const auto fam = as_real_family(p.referee_family());
        const bool all_zero = std::all_of(fam.begin(), fam.end(), [](const RealMatrix& d) { return max_abs(d) == 0.0; });
        if (all_zero) {
            ++skipped;  // both widths are zero, fingerprints undefined
            continue;
        }
        for (const auto& d : {trivial_decomposition(fam), svd_decomposition(fam)}) {
            ++checked;
            const double scale = d.rw() * d.cw();
            std::vector<StateVector> bobs;
            for (Input y = 0; y < p.input_count(); ++y) bobs.push_back(bob_fingerprint_decomp(p, d, y));
            for (Input x = 0; x < p.input_count(); ++x) {
                const auto u = alice_fingerprint_decomp(p, d, x);
                for (Input y = 0; y < p.input_count(); ++y)
                    worst = std::max(worst, std::abs(inner_product(u, bobs[y]) * scale - p_acc(raw, x, y)));
            }
        }
    }
    return {worst <= 1e-8 && checked > 0, "max |<u|v> rw cw - p_acc| = " + fmt(worst) + " over " +
                                              std::to_string(checked) + " decompositions, " + std::to_string(skipped) +
                                              " all-zero families skipped (tol 1e-8)"};
}

Outcome criterion3() {
    const auto th = CorrectnessThresholds::quarter();
    const auto p = build_equality_protocol({4, 64, 3, 1}, th);
    const auto cfg = RefereeConfig::for_mode(p, BasicMode{}, th, 0.25);
    const int trials = 1000;
    const SeededRng master(31337);
    int wrong_eq = 0, wrong_ne = 0;
    for (int t = 0; t < trials; ++t) {
        const auto ut = static_cast<std::uint64_t>(t);
        auto pick = master.split({0, ut});
        const Input x = pick.uniform_index(16);
        Input y = pick.uniform_index(15);
        if (y >= x) ++y;
        auto r_eq = master.split({1, ut});
        wrong_eq += simulate_quantum_protocol(p, BasicMode{}, x, x, cfg, r_eq).output == 1 ? 0 : 1;
        auto r_ne = master.split({2, ut});
        wrong_ne += simulate_quantum_protocol(p, BasicMode{}, x, y, cfg, r_ne).output == 0 ? 0 : 1;
    }
    const double bound = 0.25 + 3.0 * std::sqrt(0.25 * 0.75 / trials);
    const double e_eq = wrong_eq / static_cast<double>(trials);
    const double e_ne = wrong_ne / static_cast<double>(trials);
    return {e_eq <= bound && e_ne <= bound, "error x=y " + fmt(e_eq) + ", x!=y " + fmt(e_ne) + " over " +
                                                std::to_string(trials) + " trials each, copies " +
                                                std::to_string(required_copies(cfg)) + " (bound " + fmt(bound) + ")"};
}

Outcome criterion4() {
    // Each count may exceed g^4 times the unrounded unit-width count by at most one rounding step.
    RefereeConfig base;
    base.g = 1.0;
    base.alpha0 = 1.0 / 3.0;
    base.alpha1 = 2.0 / 3.0;
    base.delta = 0.25;
    const double t1 = (base.alpha1 * base.alpha1 - base.alpha0 * base.alpha0) / 4.0;
    const double raw1 = std::log(2.0 / base.delta) / (2.0 * t1 * t1);
    const auto c1 = required_copies(base);
    bool ok = c1 == static_cast<int>(std::ceil(raw1));
    std::string detail = "copies(1) = " + std::to_string(c1);
    for (double g2 : {2.0, 4.0, 8.0}) {
        RefereeConfig cfg = base;
        cfg.g = std::sqrt(g2);
        const double c = static_cast<double>(required_copies(cfg));
        const double target = g2 * g2 * raw1;
        ok = ok && c >= target - 1e-9 && c <= target + 1.0;
        detail += ", g^2=" + fmt(g2) + ": " + fmt(c) + " vs g^4 raw " + fmt(target) + " (g^4 copies(1) " +
                  fmt(g2 * g2 * c1) + ")";
    }
    return {ok, detail};
}

Outcome criteria5_6(const std::vector<RealMatrix>& mats, Outcome& six) {
    int ok5 = 0, ok6 = 0;
    double worst_excess = -1e300, worst_recon = 0.0;
    for (const auto& d : mats) {
        const auto cd = cyclic_diagonal_decomposition(d);
        const auto v = validate_convw(d, cd);
        RealMatrix sum(d.rows(), d.cols());
        for (const auto& term : cd.terms) sum = sum + term.g * term.p.real();
        if (v.ok() && max_abs_diff(sum, d) == 0.0 && cd.width() <= d.rows()) ++ok5;

        const auto rcw = convw_to_rcw(d, cd);
        const auto& fp = rcw.factor(0);
        const double root_w = std::sqrt(static_cast<double>(cd.width()));
        const double excess = std::max(row_norm(fp.e), column_norm(fp.f)) - root_w;
        const double recon = max_abs_diff(fp.e * fp.f, d);
        worst_excess = std::max(worst_excess, excess);
        worst_recon = std::max(worst_recon, recon);
        if (excess <= 1e-8 && recon <= 1e-8) ++ok6;
    }
    six = {ok6 == 100, std::to_string(ok6) + "/100 with rn(E), cn(F) <= sqrt(W) + 1e-8 and residual <= 1e-8; max excess " +
                           fmt(worst_excess) + ", max residual " + fmt(worst_recon)};
    return {ok5 == 100, std::to_string(ok5) + "/100 cyclic decompositions valid, exact, width <= M"};
}

Outcome criterion7() {
    bool ok = true;
    std::string detail;
    for (std::size_t m : {2, 4, 8, 16, 32}) {
        const auto r = width_report({first_column_ones(m).real()});
        ok = ok && r.best_rcw_upper <= 1.0 + 1e-8;
        detail += (detail.empty() ? "" : ", ") + std::string("M=") + std::to_string(m) + ": " + fmt(r.best_rcw_upper);
    }
    return {ok, "best rcw upper " + detail + " (tol 1 + 1e-8)"};
}

Outcome criterion8() {
    bool ok = true;
    std::string detail;
    for (unsigned n = 1; n <= 6; ++n) {
        const double m = std::ldexp(1.0, static_cast<int>(n));
        const auto s = ip_signed_matrix(n);
        const bool square_ok = s * s == m * RealMatrix::identity(s.rows());
        const double m15 = std::pow(m, 1.5);
        const double tn = trace_norm(s);
        const auto d = ip_matrix(n).real();
        const double lower = rcw_lower_bound(d);
        const double upper = width_report({d}).best_rcw_upper;
        const bool row_ok = square_ok && std::abs(tn - m15) <= 1e-6 * m15 &&
                            lower >= (std::sqrt(m) - 1.0) / 2.0 - 1e-6 && lower <= upper;
        ok = ok && row_ok;
        detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " lower " + fmt(lower) +
                  " upper " + fmt(upper) + (row_ok ? "" : " FAIL");
    }
    return {ok, detail};
}

Outcome criterion9(const std::vector<RealMatrix>& mats) {
    int ok = 0;
    double worst_up = -1e300, worst_low = -1e300;
    for (const auto& d : mats) {
        const auto r = width_report({d});
        const double m = static_cast<double>(d.rows());
        const double cap = std::min({std::sqrt(m), column_norm(d), oracle::largest_singular_value_power(d)});
        const double up = r.best_rcw_upper - cap;
        const double low = trace_norm(d) / m - r.best_rcw_upper;
        worst_up = std::max(worst_up, up);
        worst_low = std::max(worst_low, low);
        if (up <= 1e-6 && low <= 1e-6) ++ok;
    }
    return {ok == 100, std::to_string(ok) + "/100 satisfy the ladder; max(best - min(sqrt M, cn, ||D||)) = " +
                           fmt(worst_up) + ", max(lower - best) = " + fmt(worst_low)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion10() {
    const auto dir = fs::temp_directory_path() / "qfp_acceptance_replay";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "d.mat") << "4 4\n1 1 0 0\n0 1 1 0\n0 0 1 1\n1 0 0 1\n";
    const std::vector<std::vector<std::string>> runs{
        {"analyze", "--matrix", (dir / "d.mat").string(), "--json"},
        {"simulate", "--eq", "3,32,3", "--all-pairs", "--trials", "25", "--seed", "4242"},
        {"simulate", "--eq", "2,16,3", "--mode", "decomp:best", "--all-pairs", "--trials", "25", "--seed", "9"},
        {"fact1", "--n", "4", "--json"},
    };
    int ok = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto first = dir / ("run" + std::to_string(i) + ".out");
        const auto second = dir / ("again" + std::to_string(i) + ".out");
        const auto replay = dir / ("replay" + std::to_string(i) + ".out");
        std::ostringstream sink, err;
        auto args = runs[i];
        args.insert(args.end(), {"--out", first.string()});
        int rc = cli::run(args, sink, err);
        args.back() = second.string();
        rc |= cli::run(args, sink, err);
        rc |= cli::run({"replay", first.string() + ".manifest.json", "--out", replay.string()}, sink, err);
        const auto a = slurp(first);
        if (rc == 0 && !a.empty() && a == slurp(second) && a == slurp(replay)) ++ok;
    }
    fs::remove_all(dir);
    return {ok == static_cast<int>(runs.size()),
            std::to_string(ok) + "/" + std::to_string(runs.size()) + " commands byte-identical on repeat and replay"};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int k, const std::function<Outcome()>& f) {
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] criterion %d: %s\n", o.pass ? "PASS" : "FAIL", k, o.detail.c_str());
        std::fflush(stdout);
    };

    const auto protocols = random_protocols();
    report(1, [&] { return criterion1(protocols); });
    report(2, [&] { return criterion2(protocols); });
    report(3, criterion3);
    report(4, criterion4);

    const auto mats = random_boolean_family(77, 16);
    Outcome six{false, "not run"};
    report(5, [&] { return criteria5_6(mats, six); });
    report(6, [&] { return six; });
    report(7, criterion7);
    report(8, criterion8);
    report(9, [&] { return criterion9(random_boolean_family(78, 32)); });
    report(10, criterion10);

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
