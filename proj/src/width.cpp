#include "qfp/width.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "qfp/error.hpp"
#include "qfp/linalg.hpp"
#include "qfp/zoo.hpp"

namespace qfp {

namespace {

std::size_t square_family_size(const std::vector<RealMatrix>& family) {
    if (family.empty()) fail(ErrorKind::InvalidArgument, "empty matrix family");
    const std::size_t m = family.front().rows();
    for (const auto& d : family) {
        if (!d.is_square()) fail(ErrorKind::NotSquare, "family member is not square");
        if (d.rows() != m) fail(ErrorKind::DimensionMismatch, "family members differ in size");
        if (d.empty()) fail(ErrorKind::InvalidArgument, "empty family member");
    }
    return m;
}

bool is_permutation(const BooleanMatrix& p) {
    if (!p.is_square()) return false;
    const std::size_t m = p.rows();
    std::vector<int> col_count(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
        int row_count = 0;
        for (std::size_t b = 0; b < m; ++b)
            if (p(a, b)) {
                ++row_count;
                ++col_count[b];
            }
        if (row_count != 1) return false;
    }
    return std::all_of(col_count.begin(), col_count.end(), [](int c) { return c == 1; });
}

}  // namespace

Widths decomposition_widths(const std::vector<FactorPair>& factors) {
    if (factors.empty()) fail(ErrorKind::InvalidArgument, "decomposition has no factors");
    double rn_sq = 0.0, cn_sq = 0.0;
    for (const auto& fp : factors) {
        const double rn = row_norm(fp.e);
        const double cn = column_norm(fp.f);
        rn_sq += rn * rn;
        cn_sq += cn * cn;
    }
    const double coins = static_cast<double>(factors.size());
    Widths w;
    w.rw = std::sqrt(rn_sq / coins);
    w.cw = std::sqrt(cn_sq / coins);
    w.rcw = w.rw * w.cw;
    return w;
}

Widths decomposition_widths(const Decomposition& d) { return decomposition_widths(d.factors()); }

Decomposition::Decomposition(std::vector<RealMatrix> family, std::vector<FactorPair> factors)
    : family_(std::move(family)), factors_(std::move(factors)) {
    const std::size_t m = square_family_size(family_);
    if (factors_.size() != family_.size())
        fail(ErrorKind::DecompositionMismatch, "need one factor pair per family member");
    const std::size_t k = factors_.front().e.cols();
    if (k == 0 || k > m * m) fail(ErrorKind::DecompositionMismatch, "inner dimension K must satisfy 1 <= K <= M^2");
    for (std::size_t l = 0; l < factors_.size(); ++l) {
        const auto& fp = factors_[l];
        if (fp.e.rows() != m || fp.e.cols() != k || fp.f.rows() != k || fp.f.cols() != m)
            fail(ErrorKind::DecompositionMismatch, "factor shapes must be M x K and K x M");
        auto finite = [](const RealMatrix& x) {
            return std::all_of(x.data().begin(), x.data().end(), [](double v) { return std::isfinite(v); });
        };
        if (!finite(fp.e) || !finite(fp.f)) fail(ErrorKind::DecompositionMismatch, "factor has a non-finite entry");
        residual_ = std::max(residual_, max_abs_diff(fp.e * fp.f, family_[l]));
    }
    if (residual_ > kReconstructionTol)
        fail(ErrorKind::DecompositionMismatch, "E_l F_l differs from D_l by " + std::to_string(residual_));
    widths_ = decomposition_widths(factors_);
}

std::vector<RealMatrix> as_real_family(const std::vector<BooleanMatrix>& family) {
    std::vector<RealMatrix> out;
    out.reserve(family.size());
    for (const auto& d : family) out.push_back(d.real());
    return out;
}

Decomposition trivial_decomposition(const std::vector<RealMatrix>& family) {
    const std::size_t m = square_family_size(family);
    std::vector<FactorPair> factors;
    factors.reserve(family.size());
    for (const auto& d : family) factors.push_back({RealMatrix::identity(m), d});
    return Decomposition(family, std::move(factors));
}

Decomposition svd_decomposition(const std::vector<RealMatrix>& family) {
    const std::size_t m = square_family_size(family);
    std::vector<FactorPair> factors;
    factors.reserve(family.size());
    for (const auto& d : family) {
        const Svd s = svd(d);
        FactorPair fp{RealMatrix(m, m), RealMatrix(m, m)};
        for (std::size_t k = 0; k < m; ++k) {
            const double root = std::sqrt(s.sigma[k]);
            for (std::size_t i = 0; i < m; ++i) {
                fp.e(i, k) = s.u(i, k) * root;
                fp.f(k, i) = root * s.v(i, k);
            }
        }
        factors.push_back(std::move(fp));
    }
    return Decomposition(family, std::move(factors));
}

ConvwDecomposition cyclic_diagonal_decomposition(const RealMatrix& d) {
    if (!d.is_square()) fail(ErrorKind::NotSquare, "cyclic diagonal decomposition needs a square matrix");
    const std::size_t m = d.rows();
    ConvwDecomposition cd;
    cd.terms.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        ConvwTerm term{RealMatrix(m, m), BooleanMatrix(m, m)};
        for (std::size_t a = 0; a < m; ++a) {
            const std::size_t b = (a + j) % m;
            term.p.set(a, b, true);
            term.g(a, a) = d(a, b);
        }
        cd.terms.push_back(std::move(term));
    }
    return cd;
}

std::string to_string(ConvwCheck c) {
    switch (c) {
        case ConvwCheck::Pass: return "Pass";
        case ConvwCheck::ShapeMismatch: return "ShapeMismatch";
        case ConvwCheck::NotPermutation: return "NotPermutation";
        case ConvwCheck::NotSymmetric: return "NotSymmetric";
        case ConvwCheck::NotPSD: return "NotPSD";
        case ConvwCheck::NonNegativity: return "NonNegativity";
        case ConvwCheck::Reconstruction: return "Reconstruction";
    }
    return "Unknown";
}

ConvwValidation validate_convw(const RealMatrix& d, const ConvwDecomposition& cd) {
    if (!d.is_square() || d.empty()) return {ConvwCheck::ShapeMismatch, 0, "target matrix is not square"};
    if (cd.terms.empty()) return {ConvwCheck::ShapeMismatch, 0, "decomposition has no terms"};
    const std::size_t m = d.rows();
    RealMatrix sum(m, m);
    for (std::size_t j = 0; j < cd.terms.size(); ++j) {
        const auto& [g, p] = cd.terms[j];
        if (g.rows() != m || g.cols() != m || p.rows() != m || p.cols() != m)
            return {ConvwCheck::ShapeMismatch, j, "term shape differs from the target"};
        if (!is_permutation(p)) return {ConvwCheck::NotPermutation, j, "P_j is not a permutation matrix"};
        if (!is_symmetric(g, 1e-9)) return {ConvwCheck::NotSymmetric, j, "G_j is not symmetric"};
        for (double x : g.data())
            if (x < -1e-12) return {ConvwCheck::NonNegativity, j, "G_j has a negative entry " + std::to_string(x)};
        const double lambda_min = symmetric_eigen(0.5 * (g + g.transpose())).values.front();
        if (lambda_min < -1e-9)
            return {ConvwCheck::NotPSD, j, "G_j has eigenvalue " + std::to_string(lambda_min)};
        sum = sum + g * p.real();
    }
    if (const double err = max_abs_diff(sum, d); err > kReconstructionTol)
        return {ConvwCheck::Reconstruction, 0, "sum of G_j P_j differs from D by " + std::to_string(err)};
    return {};
}

Decomposition convw_to_rcw(const RealMatrix& d, const ConvwDecomposition& cd) {
    if (auto v = validate_convw(d, cd); !v.ok())
        fail(ErrorKind::DecompositionMismatch, "invalid convex-width decomposition: " + to_string(v.result) + " (" + v.detail + ")");
    const std::size_t m = d.rows();
    const std::size_t w = cd.width();
    RealMatrix e(m, m * w), f(m * w, m);
    for (std::size_t j = 0; j < w; ++j) {
        const RealMatrix t = psd_sqrt(cd.terms[j].g);
        const RealMatrix tp = t * cd.terms[j].p.real();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t k = 0; k < m; ++k) {
                e(a, j * m + k) = t(k, a);
                f(j * m + k, a) = tp(k, a);
            }
    }
    std::vector<FactorPair> factors;
    factors.push_back({std::move(e), std::move(f)});
    return Decomposition({d}, std::move(factors));
}

namespace {

// Rescales inner index k so that the weighted column mass of E approaches the
// weighted row mass of F. Rows of E / columns of F near the current maximum
// norm get the most weight. Each step is clamped to a factor in [1/2, 2]; an
// index whose partner side is zero is shrunk, since it adds norm without
// contributing to E F.
void rebalance_inner(FactorPair& fp, double focus) {
    constexpr double kMaxStep = 2.0;
    constexpr double kWeightFloor = 1e-8;
    const std::size_t m = fp.e.rows();
    const std::size_t k_dim = fp.e.cols();
    std::vector<double> row_sq(m, 0.0), col_sq(m, 0.0);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t k = 0; k < k_dim; ++k) row_sq[a] += fp.e(a, k) * fp.e(a, k);
    for (std::size_t k = 0; k < k_dim; ++k)
        for (std::size_t b = 0; b < m; ++b) col_sq[b] += fp.f(k, b) * fp.f(k, b);
    const double max_row = *std::max_element(row_sq.begin(), row_sq.end());
    const double max_col = *std::max_element(col_sq.begin(), col_sq.end());
    if (max_row == 0.0 || max_col == 0.0) return;
    for (double& r : row_sq) r = std::max(std::pow(r / max_row, focus), kWeightFloor);
    for (double& c : col_sq) c = std::max(std::pow(c / max_col, focus), kWeightFloor);
    for (std::size_t k = 0; k < k_dim; ++k) {
        double mass_e = 0.0, mass_f = 0.0;
        for (std::size_t a = 0; a < m; ++a) mass_e += row_sq[a] * fp.e(a, k) * fp.e(a, k);
        for (std::size_t b = 0; b < m; ++b) mass_f += col_sq[b] * fp.f(k, b) * fp.f(k, b);
        if (mass_e == 0.0 && mass_f == 0.0) continue;
        double s;
        if (mass_f == 0.0) s = 1.0 / kMaxStep;
        else if (mass_e == 0.0) s = kMaxStep;
        else s = std::clamp(std::pow(mass_f / mass_e, 0.25), 1.0 / kMaxStep, kMaxStep);
        for (std::size_t a = 0; a < m; ++a) fp.e(a, k) *= s;
        for (std::size_t b = 0; b < m; ++b) fp.f(k, b) /= s;
    }
}

// Per-member scalar c_l with rn(c E_l) = cn(F_l / c); this minimizes rw * cw
// over scalar rescalings of each member.
void rebalance_members(std::vector<FactorPair>& factors) {
    for (auto& fp : factors) {
        const double rn = row_norm(fp.e);
        const double cn = column_norm(fp.f);
        if (rn == 0.0 || cn == 0.0) continue;
        const double c = std::sqrt(cn / rn);
        fp.e = c * fp.e;
        fp.f = (1.0 / c) * fp.f;
    }
}

}  // namespace

BalanceResult balance_decomposition(const Decomposition& d, int iters) {
    if (iters < 0) fail(ErrorKind::InvalidArgument, "iteration count must be non-negative");
    constexpr double kFocus = 4.0;
    std::vector<FactorPair> current = d.factors();
    std::vector<FactorPair> best = current;
    double best_rcw = d.rcw();
    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(iters));
    for (int it = 0; it < iters; ++it) {
        for (auto& fp : current) rebalance_inner(fp, kFocus);
        rebalance_members(current);
        const double r = decomposition_widths(current).rcw;
        if (r <= best_rcw) {
            best_rcw = r;
            best = current;
        }
        trace.push_back(best_rcw);
    }
    return {Decomposition(d.family(), std::move(best)), std::move(trace)};
}

double rcw_lower_bound(const RealMatrix& d) {
    if (!d.is_square()) fail(ErrorKind::NotSquare, "rcw_lower_bound needs a square matrix");
    return trace_norm(d) / static_cast<double>(d.rows());
}

IpLowerBoundReport ip_lower_bound_check(unsigned n) {
    if (n < 1 || n > 7) fail(ErrorKind::InvalidArgument, "ip_lower_bound_check supports 1 <= n <= 7");
    IpLowerBoundReport r;
    r.n = n;
    r.m = std::size_t{1} << n;
    const double m = static_cast<double>(r.m);

    const BooleanMatrix d = ip_matrix(n);
    const RealMatrix d_signed = ip_signed_matrix(n);

    // Exact integer check of D_+-^2 = M I.
    std::vector<long long> s(r.m * r.m);
    for (std::size_t i = 0; i < r.m; ++i)
        for (std::size_t j = 0; j < r.m; ++j) s[i * r.m + j] = static_cast<long long>(d_signed(i, j));
    r.signed_square_is_scaled_identity = true;
    for (std::size_t i = 0; i < r.m && r.signed_square_is_scaled_identity; ++i)
        for (std::size_t j = 0; j < r.m; ++j) {
            long long acc = 0;
            for (std::size_t k = 0; k < r.m; ++k) acc += s[i * r.m + k] * s[k * r.m + j];
            if (acc != (i == j ? static_cast<long long>(r.m) : 0)) {
                r.signed_square_is_scaled_identity = false;
                break;
            }
        }

    r.trace_norm_signed = trace_norm(d_signed);
    r.trace_norm_ip = trace_norm(d.real());
    r.trace_norm_floor = (std::pow(m, 1.5) - m) / 2.0;
    r.rcw_lower = r.trace_norm_ip / m;
    r.rcw_floor = (std::sqrt(m) - 1.0) / 2.0;
    r.passed = r.signed_square_is_scaled_identity &&
               std::abs(r.trace_norm_signed - std::pow(m, 1.5)) <= 1e-6 * std::pow(m, 1.5) &&
               r.trace_norm_ip >= r.trace_norm_floor - 1e-6 && r.rcw_lower >= r.rcw_floor - 1e-6;
    return r;
}

WidthReport width_report(const std::vector<RealMatrix>& family, int balance_iters) {
    const std::size_t m = square_family_size(family);
    WidthReport rep;
    rep.m = m;
    rep.coins = family.size();
    const bool boolean = std::all_of(family.begin(), family.end(), [](const RealMatrix& d) { return is_boolean(d); });
    const bool single = family.size() == 1;

    auto add = [&](const std::string& name, Decomposition d) {
        rep.bounds[name] = d.rcw();
        rep.certificates.emplace(name, std::move(d));
    };
    Decomposition trivial = trivial_decomposition(family);
    Decomposition by_svd = svd_decomposition(family);
    add("trivial_balanced", balance_decomposition(trivial, balance_iters).decomposition);
    add("svd_balanced", balance_decomposition(by_svd, balance_iters).decomposition);
    add("trivial", std::move(trivial));
    add("svd", std::move(by_svd));
    if (single) {
        const RealMatrix& d = family.front();
        const bool nonnegative = std::all_of(d.data().begin(), d.data().end(), [](double x) { return x >= 0.0; });
        if (nonnegative) add("cyclic_convw", convw_to_rcw(d, cyclic_diagonal_decomposition(d)));
    }

    rep.best_rcw_upper = std::numeric_limits<double>::infinity();
    for (const auto& [name, value] : rep.bounds)
        if (value < rep.best_rcw_upper) {
            rep.best_rcw_upper = value;
            rep.best_method = name;
        }

    if (boolean) rep.sqrt_m_bound = std::sqrt(static_cast<double>(m));
    for (const auto& d : family) {
        rep.column_norm_bound = std::max(rep.column_norm_bound, column_norm(d));
        rep.operator_norm_bound = std::max(rep.operator_norm_bound, operator_norm(d));
    }
    if (single) {
        rep.rank = numeric_rank(family.front());
        rep.lower_bound_trace = rcw_lower_bound(family.front());
        rep.rank_observation_holds = rep.best_rcw_upper <= static_cast<double>(*rep.rank) + kBoundSlack;
        if (*rep.lower_bound_trace > rep.best_rcw_upper + kBoundSlack)
            fail(ErrorKind::ConsistencyFailure, "trace-norm lower bound " + std::to_string(*rep.lower_bound_trace) +
                                                    " exceeds best upper bound " + std::to_string(rep.best_rcw_upper));
    }
    return rep;
}

std::string WidthReport::to_json(const std::map<std::string, std::vector<std::string>>& certificate_files) const {
    using json = nlohmann::ordered_json;
    json j;
    j["M"] = m;
    j["L"] = coins;
    j["rank"] = rank ? json(*rank) : json(nullptr);
    j["bounds"] = json::object();
    for (const auto& [name, value] : bounds) j["bounds"][name] = value;
    j["analytic_bounds"] = {
        {"sqrt_M", sqrt_m_bound ? json(*sqrt_m_bound) : json(nullptr)},
        {"column_norm", column_norm_bound},
        {"operator_norm", operator_norm_bound},
        {"rank", rank ? json(*rank) : json(nullptr)},
    };
    j["lower_bound_trace"] = lower_bound_trace ? json(*lower_bound_trace) : json(nullptr);
    j["best_rcw_upper"] = best_rcw_upper;
    j["best_method"] = best_method;
    j["rank_observation_holds"] = rank_observation_holds;
    j["certificates"] = json::object();
    for (const auto& [name, d] : certificates) {
        json c = {{"rw", d.rw()}, {"cw", d.cw()}, {"rcw", d.rcw()}, {"K", d.inner_dim()},
                  {"reconstruction_error", d.reconstruction_error()}};
        if (auto it = certificate_files.find(name); it != certificate_files.end()) c["files"] = it->second;
        j["certificates"][name] = std::move(c);
    }
    return j.dump(2);
}

}  // namespace qfp
