#include "qfp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qfp/error.hpp"

namespace qfp {

namespace {

void require_nonempty(const RealMatrix& a, const char* op) {
    if (a.empty()) fail(ErrorKind::InvalidArgument, std::string(op) + ": empty matrix");
}

// Givens-style rotation parameters zeroing the (p,q) entry of the 2x2
// symmetric matrix [[app, apq], [apq, aqq]].
void jacobi_rotation(double app, double aqq, double apq, double& c, double& s) {
    const double zeta = (aqq - app) / (2.0 * apq);
    const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
    c = 1.0 / std::hypot(1.0, t);
    s = c * t;
}

}  // namespace

double column_norm(const RealMatrix& q) {
    require_nonempty(q, "column_norm");
    std::vector<double> sq(q.cols(), 0.0);
    for (std::size_t r = 0; r < q.rows(); ++r)
        for (std::size_t c = 0; c < q.cols(); ++c) sq[c] += q(r, c) * q(r, c);
    return std::sqrt(*std::max_element(sq.begin(), sq.end()));
}

double row_norm(const RealMatrix& q) {
    require_nonempty(q, "row_norm");
    double best = 0.0;
    for (std::size_t r = 0; r < q.rows(); ++r) {
        auto row = q.row(r);
        best = std::max(best, std::inner_product(row.begin(), row.end(), row.begin(), 0.0));
    }
    return std::sqrt(best);
}

double frobenius_norm(const RealMatrix& a) {
    double s = 0.0;
    for (double x : a.data()) s += x * x;
    return std::sqrt(s);
}

Svd svd(const RealMatrix& a, const JacobiOptions& opts) {
    require_nonempty(a, "svd");
    // Work on the tall orientation; transpose back at the end.
    const bool wide = a.cols() > a.rows();
    RealMatrix w = wide ? a.transpose() : a;
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();

    // Column-major working copy: cols[j] is column j of w.
    std::vector<std::vector<double>> cols(n, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) cols[j][i] = w(i, j);
    std::vector<std::vector<double>> vcols(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) vcols[j][j] = 1.0;

    // Columns below eps * ||A||_F are numerically zero; rotating them only churns noise.
    const double zero_sq = std::pow(std::numeric_limits<double>::epsilon() * frobenius_norm(a), 2);
    bool converged = false;
    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += cols[p][i] * cols[p][i];
                    beta += cols[q][i] * cols[q][i];
                    gamma += cols[p][i] * cols[q][i];
                }
                if (gamma == 0.0 || std::min(alpha, beta) <= zero_sq ||
                    std::abs(gamma) <= opts.tolerance * std::sqrt(alpha * beta))
                    continue;
                converged = false;
                double c, s;
                jacobi_rotation(alpha, beta, gamma, c, s);
                for (std::size_t i = 0; i < m; ++i) {
                    const double xp = cols[p][i], xq = cols[q][i];
                    cols[p][i] = c * xp - s * xq;
                    cols[q][i] = s * xp + c * xq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double xp = vcols[p][i], xq = vcols[q][i];
                    vcols[p][i] = c * xp - s * xq;
                    vcols[q][i] = s * xp + c * xq;
                }
            }
        }
    }
    if (!converged) fail(ErrorKind::ConvergenceFailure, "one-sided Jacobi SVD did not converge within the sweep cap");

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j)
        norms[j] = std::sqrt(std::inner_product(cols[j].begin(), cols[j].end(), cols[j].begin(), 0.0));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    Svd out{RealMatrix(m, n), std::vector<double>(n), RealMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        const double sigma = norms[j];
        out.sigma[k] = sigma;
        if (sigma > 0.0)
            for (std::size_t i = 0; i < m; ++i) out.u(i, k) = cols[j][i] / sigma;
        for (std::size_t i = 0; i < n; ++i) out.v(i, k) = vcols[j][i];
    }
    if (wide) std::swap(out.u, out.v);
    return out;
}

std::vector<double> singular_values(const RealMatrix& a, const JacobiOptions& opts) { return svd(a, opts).sigma; }

double trace_norm(const RealMatrix& a) {
    const auto s = singular_values(a);
    return std::accumulate(s.begin(), s.end(), 0.0);
}

double operator_norm(const RealMatrix& a) { return singular_values(a).front(); }

std::size_t numeric_rank(const RealMatrix& a, double tol) {
    if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "rank tolerance must be positive");
    const auto s = singular_values(a);
    if (s.front() == 0.0) return 0;
    const double cut = tol * s.front();
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [cut](double x) { return x > cut; }));
}

SymmetricEigen symmetric_eigen(const RealMatrix& g, const JacobiOptions& opts) {
    if (!g.is_square()) fail(ErrorKind::NotSquare, "symmetric_eigen: matrix is not square");
    require_nonempty(g, "symmetric_eigen");
    const std::size_t n = g.rows();
    RealMatrix a = g;
    RealMatrix v = RealMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };
    const double scale = std::max(frobenius_norm(g), std::numeric_limits<double>::min());

    bool converged = off_norm() <= opts.tolerance * scale;
    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                double c, s;
                jacobi_rotation(a(p, p), a(q, q), apq, c, s);
                // a <- R^T a R with R the (p,q) rotation.
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        converged = off_norm() <= opts.tolerance * scale;
    }
    if (!converged) fail(ErrorKind::ConvergenceFailure, "Jacobi eigenvalue iteration did not converge within the sweep cap");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    SymmetricEigen out{std::vector<double>(n), RealMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

RealMatrix psd_sqrt(const RealMatrix& g, const PsdOptions& opts) {
    if (!g.is_square()) fail(ErrorKind::NotSquare, "psd_sqrt: matrix is not square");
    if (!is_symmetric(g, opts.symmetry_tol)) fail(ErrorKind::NotSymmetric, "psd_sqrt: asymmetry exceeds tolerance");
    // Symmetrize so rounding-level asymmetry cannot leak into the rotations.
    RealMatrix sym = 0.5 * (g + g.transpose());
    const auto eig = symmetric_eigen(sym);
    const std::size_t n = g.rows();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eig.values[k];
        if (lambda < -opts.eigen_tol)
            fail(ErrorKind::NotPSD, "psd_sqrt: eigenvalue " + std::to_string(lambda) + " is below tolerance");
        roots[k] = std::sqrt(std::max(lambda, 0.0));
    }
    RealMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += eig.vectors(i, k) * roots[k] * eig.vectors(j, k);
            t(i, j) = s;
            t(j, i) = s;
        }
    return t;
}

}  // namespace qfp
