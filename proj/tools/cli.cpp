#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qfp/error.hpp"
#include "qfp/fingerprint.hpp"
#include "qfp/linalg.hpp"
#include "qfp/referee.hpp"
#include "qfp/smp.hpp"
#include "qfp/width.hpp"
#include "qfp/zoo.hpp"

namespace qfp::cli {

namespace {

using json = nlohmann::ordered_json;

// Thrown for bad flag values; maps to kInputError.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

std::string fmt_double(double v) {
    std::ostringstream ss;
    ss << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return ss.str();
}

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InputError("cannot open output file '" + path + "'");
        }
        out_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

struct CommonOptions {
    std::string out;
    std::string manifest;
    bool as_json = false;
};

struct AnalyzeOptions {
    std::string matrix;
    std::string cert_dir;
    int balance_iters = 50;
};

struct SimulateOptions {
    std::string protocol;
    std::string eq;
    std::string mode = "basic";
    std::string function;
    std::optional<std::uint64_t> x, y;
    bool all_pairs = false;
    double delta = 0.25;
    double alpha0 = 1.0 / 3.0;
    double alpha1 = 2.0 / 3.0;
    std::int64_t trials = 100;
    std::optional<std::int64_t> copies;
};

struct Fact1Options {
    int n = 2;
    int balance_iters = 50;
};

int cmd_analyze(const AnalyzeOptions& o, const CommonOptions& c, std::ostream& out) {
    RealMatrix d = read_matrix_file(o.matrix);
    if (!d.is_square()) {
        const std::size_t m = std::max(d.rows(), d.cols());
        d = zero_pad(d, m, m);
    }
    const WidthReport rep = width_report({d}, o.balance_iters);

    std::map<std::string, std::vector<std::string>> files;
    if (!o.cert_dir.empty()) {
        std::filesystem::create_directories(o.cert_dir);
        for (const auto& [name, dec] : rep.certificates) {
            const auto base = (std::filesystem::path(o.cert_dir) / name).string();
            write_matrix_file(base + "_E.mat", dec.factor(0).e);
            write_matrix_file(base + "_F.mat", dec.factor(0).f);
            files[name] = {base + "_E.mat", base + "_F.mat"};
        }
    }

    Sink sink(c.out, out);
    auto& s = sink.stream();
    if (c.as_json) {
        s << rep.to_json(files) << '\n';
        return kOk;
    }
    s << "M                     " << rep.m << '\n';
    s << "rank                  " << *rep.rank << '\n';
    s << "lower bound (trace)   " << fmt_double(*rep.lower_bound_trace) << '\n';
    s << "best rcw upper bound  " << fmt_double(rep.best_rcw_upper) << "  (" << rep.best_method << ")\n";
    s << "analytic bounds\n";
    if (rep.sqrt_m_bound) s << "  sqrt(M)             " << fmt_double(*rep.sqrt_m_bound) << '\n';
    s << "  column norm         " << fmt_double(rep.column_norm_bound) << '\n';
    s << "  operator norm       " << fmt_double(rep.operator_norm_bound) << '\n';
    s << "generators\n";
    for (const auto& [name, value] : rep.bounds) {
        s << "  " << std::left << std::setw(20) << name << fmt_double(value);
        if (auto it = files.find(name); it != files.end()) s << "  " << it->second[0] << ' ' << it->second[1];
        s << '\n';
    }
    if (!rep.rank_observation_holds) s << "note: best upper bound exceeds rank(D)\n";
    return kOk;
}

std::vector<std::uint64_t> parse_triple(const std::string& text) {
    std::vector<std::uint64_t> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            vals.push_back(v);
        } catch (const std::exception&) {
            throw InputError("--eq expects n,L,t as three non-negative integers");
        }
    }
    if (vals.size() != 3) throw InputError("--eq expects n,L,t");
    return vals;
}

FingerprintMode make_mode(const std::string& mode, const ClassicalSMP& p) {
    if (mode == "basic") return BasicMode{};
    const std::string prefix = "decomp:";
    if (mode.rfind(prefix, 0) != 0) throw InputError("unknown --mode '" + mode + "'");
    const std::string method = mode.substr(prefix.size());
    const auto family = as_real_family(pad_to_square(p).referee_family());
    if (method == "trivial") return DecompositionMode{trivial_decomposition(family)};
    if (method == "svd") return DecompositionMode{svd_decomposition(family)};
    if (method == "trivial_balanced")
        return DecompositionMode{balance_decomposition(trivial_decomposition(family)).decomposition};
    if (method == "svd_balanced") return DecompositionMode{balance_decomposition(svd_decomposition(family)).decomposition};
    if (method == "best") {
        WidthReport rep = width_report(family);
        return DecompositionMode{rep.certificates.at(rep.best_method)};
    }
    throw InputError("unknown decomposition method '" + method + "'");
}

int cmd_simulate(const SimulateOptions& o, const CommonOptions& c, std::uint64_t seed, std::ostream& out) {
    if (o.protocol.empty() == o.eq.empty()) throw InputError("give exactly one of --protocol or --eq");
    if (o.all_pairs == (o.x.has_value() || o.y.has_value()))
        throw InputError("give either --all-pairs or both --x and --y");
    if (!o.all_pairs && !(o.x && o.y)) throw InputError("--x and --y must be given together");
    if (o.trials < 1) throw InputError("--trials must be positive");

    const CorrectnessThresholds th{o.alpha0, o.alpha1};
    th.check();

    std::optional<ClassicalSMP> p;
    std::string function = o.function;
    if (!o.eq.empty()) {
        const auto v = parse_triple(o.eq);
        p = build_equality_protocol({static_cast<unsigned>(v[0]), v[1], static_cast<unsigned>(v[2]), seed}, th);
        if (function.empty()) function = "eq";
    } else {
        p = read_protocol_file(o.protocol);
        if (function.empty()) function = "promise";
    }

    std::optional<TargetFunction> f;
    if (function == "eq") f = equality_function(p->n());
    else if (function == "ip") f = inner_product_function(p->n());
    else if (function != "promise") throw InputError("unknown --function '" + function + "'");

    const FingerprintMode mode = make_mode(o.mode, *p);
    RefereeConfig cfg = RefereeConfig::for_mode(*p, mode, th, o.delta);
    cfg.copies = o.copies;
    const SimulationStats cost = cost_report(*p, mode, cfg);
    const SeededRng master(seed);

    std::vector<std::pair<Input, Input>> pairs;
    if (o.all_pairs) {
        for (Input x = 0; x < p->input_count(); ++x)
            for (Input y = 0; y < p->input_count(); ++y) pairs.emplace_back(x, y);
    } else {
        if (*o.x >= p->input_count() || *o.y >= p->input_count()) throw InputError("--x/--y out of range");
        pairs.emplace_back(*o.x, *o.y);
    }

    Sink sink(c.out, out);
    auto& s = sink.stream();
    s << "x,y,f,p_acc,copies,empirical_error,total_qubits\n";
    for (const auto& [x, y] : pairs) {
        const double p_acc = acceptance_probability(*p, x, y);
        std::optional<bool> fx;
        if (f) fx = (*f)(x, y);
        else if (p_acc >= th.alpha1) fx = true;
        else if (p_acc <= th.alpha0) fx = false;

        const double overlap = fingerprint_overlap(*p, mode, x, y);
        std::int64_t wrong = 0;
        for (std::int64_t t = 0; t < o.trials; ++t) {
            SeededRng rng = master.split({x, y, static_cast<std::uint64_t>(t)});
            const bool output = run_swap_tests(overlap, cfg, rng);
            if (fx && output != *fx) ++wrong;
        }
        s << x << ',' << y << ',' << (fx ? (*fx ? "1" : "0") : "NA") << ',' << fmt_double(p_acc) << ',' << cost.copies
          << ',' << (fx ? fmt_double(static_cast<double>(wrong) / static_cast<double>(o.trials)) : "NA") << ','
          << cost.total_qubits << '\n';
    }
    return kOk;
}

int cmd_fact1(const Fact1Options& o, const CommonOptions& c, std::ostream& out) {
    if (o.n < 1 || o.n > 7) throw InputError("--n must be in [1, 7]");
    const IpLowerBoundReport r = ip_lower_bound_check(static_cast<unsigned>(o.n));
    const WidthReport rep = width_report({ip_matrix(static_cast<unsigned>(o.n)).real()}, o.balance_iters);
    const bool pass = r.passed && r.rcw_lower <= rep.best_rcw_upper + kBoundSlack;

    Sink sink(c.out, out);
    auto& s = sink.stream();
    if (c.as_json) {
        json j{{"n", r.n},
               {"M", r.m},
               {"signed_square_is_scaled_identity", r.signed_square_is_scaled_identity},
               {"trace_norm_signed", r.trace_norm_signed},
               {"trace_norm_signed_expected", std::pow(static_cast<double>(r.m), 1.5)},
               {"trace_norm_ip", r.trace_norm_ip},
               {"trace_norm_floor", r.trace_norm_floor},
               {"rcw_lower_bound", r.rcw_lower},
               {"rcw_floor", r.rcw_floor},
               {"best_rcw_upper", rep.best_rcw_upper},
               {"best_method", rep.best_method},
               {"result", pass ? "PASS" : "FAIL"}};
        s << j.dump(2) << '\n';
    } else {
        s << "n                         " << r.n << '\n';
        s << "M                         " << r.m << '\n';
        s << "D_pm^2 == M I             " << (r.signed_square_is_scaled_identity ? "yes" : "no") << '\n';
        s << "trace norm D_pm           " << fmt_double(r.trace_norm_signed) << '\n';
        s << "trace norm D              " << fmt_double(r.trace_norm_ip) << '\n';
        s << "(M^1.5 - M)/2             " << fmt_double(r.trace_norm_floor) << '\n';
        s << "rcw lower bound           " << fmt_double(r.rcw_lower) << '\n';
        s << "(sqrt(M) - 1)/2           " << fmt_double(r.rcw_floor) << '\n';
        s << "best rcw upper bound      " << fmt_double(rep.best_rcw_upper) << "  (" << rep.best_method << ")\n";
        s << (pass ? "PASS" : "FAIL") << '\n';
    }
    return pass ? kOk : kConsistencyFailure;
}

void write_manifest(const std::string& path, const std::vector<std::string>& args, const std::string& command,
                    std::uint64_t seed, const std::string& start, std::ostream& err) {
    json m{{"command", command}, {"args", args},          {"seed", seed},
           {"tool_version", kToolVersion}, {"start", start}, {"end", utc_now()}};
    if (path.empty()) {
        err << "manifest: " << m.dump() << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot write manifest '" + path + "'");
    f << m.dump(2) << '\n';
}

// Rewrites --out/--manifest for a replayed run.
std::vector<std::string> replay_args(const std::vector<std::string>& recorded, const std::string& out) {
    std::vector<std::string> args;
    for (std::size_t i = 0; i < recorded.size(); ++i) {
        const std::string& a = recorded[i];
        if (a == "--out" || a == "--manifest") {
            ++i;
            continue;
        }
        if (a.rfind("--out=", 0) == 0 || a.rfind("--manifest=", 0) == 0) continue;
        args.push_back(a);
    }
    if (!out.empty()) {
        args.push_back("--out");
        args.push_back(out);
    }
    return args;
}

int map_error(const Error& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidArgument:
        case ErrorKind::InvalidConfig:
        case ErrorKind::IndexOutOfRange:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::NotSquare: return kInputError;
        case ErrorKind::ConsistencyFailure: return kConsistencyFailure;
        case ErrorKind::ValidationExhausted: return kValidationExhausted;
        default: return kInternalError;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum fingerprint simulation and row-column width analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CommonOptions common;
    std::uint64_t seed = 1;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out, "Write output to FILE instead of stdout");
        sub->add_option("--manifest", common.manifest, "Write the run manifest to FILE");
        sub->add_flag("--json", common.as_json, "Machine-readable JSON output");
    };

    AnalyzeOptions analyze;
    auto* a = app.add_subcommand("analyze", "Width bounds for a referee matrix");
    a->add_option("--matrix", analyze.matrix, "Matrix file")->required();
    a->add_option("--cert-dir", analyze.cert_dir, "Write certificate factors E, F to DIR");
    a->add_option("--balance-iters", analyze.balance_iters, "Balancing iterations")->check(CLI::NonNegativeNumber);
    add_common(a);

    SimulateOptions sim;
    auto* s = app.add_subcommand("simulate", "Monte-Carlo run of the quantum fingerprint protocol");
    s->add_option("--protocol", sim.protocol, "Protocol file");
    s->add_option("--eq", sim.eq, "Build the equality protocol with n,L,t");
    s->add_option("--mode", sim.mode, "basic | decomp:trivial|svd|trivial_balanced|svd_balanced|best");
    s->add_option("--function", sim.function, "eq | ip | promise (default: eq for --eq, else promise)");
    s->add_option("--x", sim.x, "Alice input");
    s->add_option("--y", sim.y, "Bob input");
    s->add_flag("--all-pairs", sim.all_pairs, "Run every input pair");
    s->add_option("--delta", sim.delta, "Target error probability");
    s->add_option("--alpha0", sim.alpha0, "Max classical acceptance when f = 0");
    s->add_option("--alpha1", sim.alpha1, "Min classical acceptance when f = 1");
    s->add_option("--trials", sim.trials, "Trials per input pair");
    s->add_option("--copies", sim.copies, "Override the number of copies");
    s->add_option("--seed", seed, "Master seed");
    add_common(s);

    Fact1Options fact1;
    auto* f = app.add_subcommand("fact1", "Trace-norm lower bound check for the inner-product matrix");
    f->add_option("--n", fact1.n, "Input length in bits")->required();
    f->add_option("--balance-iters", fact1.balance_iters, "Balancing iterations")->check(CLI::NonNegativeNumber);
    add_common(f);

    std::string manifest_in;
    std::string replay_out;
    auto* r = app.add_subcommand("replay", "Re-run a recorded manifest");
    r->add_option("manifest", manifest_in, "Manifest file")->required();
    r->add_option("--out", replay_out, "Write output to FILE instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    if (r->parsed()) {
        std::ifstream in(manifest_in);
        if (!in) {
            err << "error: cannot open manifest '" << manifest_in << "'\n";
            return kInputError;
        }
        json m;
        try {
            m = json::parse(in);
            return run(replay_args(m.at("args").get<std::vector<std::string>>(), replay_out), out, err);
        } catch (const json::exception& e) {
            err << "error: malformed manifest: " << e.what() << '\n';
            return kInputError;
        }
    }

    const std::string start = utc_now();
    std::string command;
    std::string manifest_path = common.manifest;
    if (manifest_path.empty() && !common.out.empty()) manifest_path = common.out + ".manifest.json";
    try {
        int code = kOk;
        if (a->parsed()) {
            command = "analyze";
            code = cmd_analyze(analyze, common, out);
        } else if (s->parsed()) {
            command = "simulate";
            code = cmd_simulate(sim, common, seed, out);
        } else {
            command = "fact1";
            code = cmd_fact1(fact1, common, out);
        }
        write_manifest(manifest_path, args, command, seed, start, err);
        return code;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        return map_error(e, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace qfp::cli
