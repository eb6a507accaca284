#pragma once

// Test-only oracles and instance generators. Nothing here calls the library's
// SVD or eigen solvers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "qfp/error.hpp"
#include "qfp/matrix.hpp"
#include "qfp/rng.hpp"
#include "qfp/smp.hpp"

namespace qfp::oracle {

// Kind of the qfp::Error thrown by f; records a failure if nothing is thrown.
template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected qfp::Error";
    return ErrorKind::InvalidArgument;
}

inline RealMatrix random_matrix(std::size_t rows, std::size_t cols, SeededRng& rng, double lo = -1.0, double hi = 1.0) {
    RealMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = lo + (hi - lo) * rng.uniform01();
    return m;
}

// Coefficients c_0..c_n of det(lambda I - A) = sum_k c_k lambda^k, by
// Faddeev-LeVerrier. Exact enough for the tiny integer matrices it is used on.
inline std::vector<double> characteristic_polynomial(const RealMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    RealMatrix m(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        RealMatrix next = a * m;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        m = next;
        RealMatrix am = a * m;
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / static_cast<double>(k);
    }
    return c;
}

// All roots of a monic polynomial (coefficients low-to-high) by Durand-Kerner.
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    const std::size_t n = coeffs.size() - 1;
    std::vector<std::complex<double>> z(n);
    const std::complex<double> seed(0.4, 0.9);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<double>(i));
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0.0;
        for (std::size_t k = n + 1; k-- > 0;) v = v * x + coeffs[k];
        return v;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> denom = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            z[i] -= eval(z[i]) / denom;
        }
    }
    return z;
}

// Trace norm through the eigenvalues of A^T A found as characteristic-polynomial roots.
inline double trace_norm_via_charpoly(const RealMatrix& a) {
    const auto roots = polynomial_roots(characteristic_polynomial(a.transpose() * a));
    double s = 0.0;
    for (const auto& r : roots) s += std::sqrt(std::max(0.0, r.real()));
    return s;
}

// Column-by-column brute-force acceptance count, written independently of
// the library's accepting_coins.
inline std::size_t count_accepting_coins(const ClassicalSMP& p, Input x, Input y) {
    std::size_t count = 0;
    for (std::size_t l = 0; l < p.coins(); ++l) {
        const Message a = p.alice_table()[x * p.coins() + l];
        const Message b = p.bob_table()[y * p.coins() + l];
        count += p.referee_family()[l].real()(a, b) == 1.0 ? 1 : 0;
    }
    return count;
}

// Power iteration on A^T A; used as an independent check of sigma_max.
inline double largest_singular_value_power(const RealMatrix& a, int iters = 2000) {
    const RealMatrix g = a.transpose() * a;
    std::vector<double> v(g.cols());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.013 * static_cast<double>(i % 7);
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> w(g.rows(), 0.0);
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) w[i] += g(i, j) * v[j];
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / norm;
        lambda = norm;
    }
    return std::sqrt(lambda);
}

}  // namespace qfp::oracle
