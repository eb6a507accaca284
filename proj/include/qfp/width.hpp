#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfp/matrix.hpp"

namespace qfp {

inline constexpr double kReconstructionTol = 1e-8;

struct FactorPair {
    RealMatrix e;  // M x K
    RealMatrix f;  // K x M
};

struct Widths {
    double rw = 0.0;
    double cw = 0.0;
    double rcw = 0.0;
};

// Widths straight from the root-mean-square formulas; no validation against a family.
Widths decomposition_widths(const std::vector<FactorPair>& factors);

// Factorizations D_l = E_l F_l of a square family with a shared inner
// dimension K <= M^2. Construction checks every product against the family
// to kReconstructionTol (max-abs) and caches the widths.
class Decomposition {
public:
    Decomposition(std::vector<RealMatrix> family, std::vector<FactorPair> factors);

    std::size_t coins() const noexcept { return factors_.size(); }
    std::size_t size() const noexcept { return family_.front().rows(); }  // M
    std::size_t inner_dim() const noexcept { return factors_.front().e.cols(); }  // K

    const std::vector<RealMatrix>& family() const noexcept { return family_; }
    const std::vector<FactorPair>& factors() const noexcept { return factors_; }
    const FactorPair& factor(std::size_t l) const { return factors_.at(l); }

    const Widths& widths() const noexcept { return widths_; }
    double rw() const noexcept { return widths_.rw; }
    double cw() const noexcept { return widths_.cw; }
    double rcw() const noexcept { return widths_.rcw; }

    // Largest max-abs reconstruction error over the family.
    double reconstruction_error() const noexcept { return residual_; }

private:
    std::vector<RealMatrix> family_;
    std::vector<FactorPair> factors_;
    Widths widths_;
    double residual_ = 0.0;
};

Widths decomposition_widths(const Decomposition& d);

std::vector<RealMatrix> as_real_family(const std::vector<BooleanMatrix>& family);

// E_l = I, F_l = D_l.
Decomposition trivial_decomposition(const std::vector<RealMatrix>& family);
// E_l = U sqrt(S), F_l = sqrt(S) V^T.
Decomposition svd_decomposition(const std::vector<RealMatrix>& family);

// D = sum_j G_j P_j with each P_j a permutation and each G_j symmetric PSD
// with non-negative entries.
struct ConvwTerm {
    RealMatrix g;
    BooleanMatrix p;
};

struct ConvwDecomposition {
    std::vector<ConvwTerm> terms;
    std::size_t width() const noexcept { return terms.size(); }
};

// Term j (0-based) keeps the entries with b - a = j (mod M); P_j is the cyclic
// shift a -> a + j and G_j = D_j P_j^T is diagonal.
ConvwDecomposition cyclic_diagonal_decomposition(const RealMatrix& d);

enum class ConvwCheck { Pass, ShapeMismatch, NotPermutation, NotSymmetric, NotPSD, NonNegativity, Reconstruction };

struct ConvwValidation {
    ConvwCheck result = ConvwCheck::Pass;
    std::size_t term = 0;  // index of the first offending term, when applicable
    std::string detail;
    bool ok() const noexcept { return result == ConvwCheck::Pass; }
};

std::string to_string(ConvwCheck c);

ConvwValidation validate_convw(const RealMatrix& d, const ConvwDecomposition& cd);

// Single-member decomposition with K = M W: E = [T_1^T | ... | T_W^T],
// F = [T_1 P_1; ...; T_W P_W] where T_j^T T_j = G_j. Requires a valid cd.
Decomposition convw_to_rcw(const RealMatrix& d, const ConvwDecomposition& cd);

struct BalanceResult {
    Decomposition decomposition;
    std::vector<double> trace;  // best rcw after each iteration, non-increasing
};

// Rescales the inner index by positive diagonals, E_l S_l and S_l^{-1} F_l,
// keeping the best iterate. Heuristic; not an rcw minimizer.
BalanceResult balance_decomposition(const Decomposition& d, int iters = 50);

// trace_norm(D) / M: a lower bound on rcw of the single-matrix family {D}.
double rcw_lower_bound(const RealMatrix& d);

struct IpLowerBoundReport {
    unsigned n = 0;
    std::size_t m = 0;
    bool signed_square_is_scaled_identity = false;  // D_+-^2 == M I exactly
    double trace_norm_signed = 0.0;
    double trace_norm_ip = 0.0;
    double trace_norm_floor = 0.0;  // (M^{3/2} - M) / 2
    double rcw_lower = 0.0;         // trace_norm_ip / M
    double rcw_floor = 0.0;         // (sqrt(M) - 1) / 2
    bool passed = false;
};

// Checks the inner-product lower-bound argument for 1 <= n <= 7.
IpLowerBoundReport ip_lower_bound_check(unsigned n);

struct WidthReport {
    std::size_t m = 0;
    std::size_t coins = 0;
    std::map<std::string, double> bounds;  // generator name -> certified rcw
    std::map<std::string, Decomposition> certificates;
    std::optional<double> lower_bound_trace;  // single-matrix families only
    std::optional<double> sqrt_m_bound;       // boolean families only
    double column_norm_bound = 0.0;           // max_l cn(D_l)
    double operator_norm_bound = 0.0;         // max_l ||D_l||
    std::optional<std::size_t> rank;          // single-matrix families only
    double best_rcw_upper = 0.0;
    std::string best_method;
    bool rank_observation_holds = true;  // best_rcw_upper <= rank + 1e-6

    // JSON; `certificate_files` maps method -> list of written file paths.
    std::string to_json(const std::map<std::string, std::vector<std::string>>& certificate_files = {}) const;
};

inline constexpr double kBoundSlack = 1e-6;

// Runs every applicable generator on a square family. Throws
// ConsistencyFailure if the trace-norm lower bound exceeds the best upper bound.
WidthReport width_report(const std::vector<RealMatrix>& family, int balance_iters = 50);

}  // namespace qfp
