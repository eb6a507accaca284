#include "qfp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qfp/error.hpp"

namespace qfp {

namespace {

void require_finite(std::span<const double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "matrix entry is not finite");
}

void require_same_shape(const RealMatrix& a, const RealMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorKind::DimensionMismatch, std::string(op) + ": shapes differ");
}

}  // namespace

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (!std::isfinite(fill)) fail(ErrorKind::InvalidArgument, "fill value is not finite");
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        fail(ErrorKind::DimensionMismatch, "entry count does not equal rows x cols");
    require_finite(data_);
}

RealMatrix::RealMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_);
}

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

RealMatrix RealMatrix::ones(std::size_t rows, std::size_t cols) { return RealMatrix(rows, cols, 1.0); }

RealMatrix RealMatrix::diagonal(std::span<const double> diag) {
    RealMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    require_finite(diag);
    return m;
}

RealMatrix RealMatrix::transpose() const {
    RealMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) fail(ErrorKind::DimensionMismatch, "matrix product: inner dimensions differ");
    RealMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;  // decomposition factors are frequently sparse
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
        }
    }
    return c;
}

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b) {
    require_same_shape(a, b, "matrix sum");
    std::vector<double> d(a.data().begin(), a.data().end());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += b.data()[i];
    return RealMatrix(a.rows(), a.cols(), std::move(d));
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
    require_same_shape(a, b, "matrix difference");
    std::vector<double> d(a.data().begin(), a.data().end());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b.data()[i];
    return RealMatrix(a.rows(), a.cols(), std::move(d));
}

RealMatrix operator*(double s, const RealMatrix& a) {
    std::vector<double> d(a.data().begin(), a.data().end());
    for (double& x : d) x *= s;
    return RealMatrix(a.rows(), a.cols(), std::move(d));
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double max_abs(const RealMatrix& a) {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

bool is_symmetric(const RealMatrix& a, double tol) {
    if (!a.is_square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (std::abs(a(i, j) - a(j, i)) > tol) return false;
    return true;
}

RealMatrix zero_pad(const RealMatrix& a, std::size_t rows, std::size_t cols) {
    if (rows < a.rows() || cols < a.cols()) fail(ErrorKind::InvalidArgument, "zero_pad cannot shrink a matrix");
    RealMatrix p(rows, cols);
    for (std::size_t r = 0; r < a.rows(); ++r)
        std::copy(a.row(r).begin(), a.row(r).end(), p.row(r).begin());
    return p;
}

bool is_boolean(const RealMatrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](double x) { return x == 0.0 || x == 1.0; });
}

BooleanMatrix::BooleanMatrix(RealMatrix m) : m_(std::move(m)) {
    if (!is_boolean(m_)) fail(ErrorKind::InvalidArgument, "boolean matrix entries must be exactly 0 or 1");
}

BooleanMatrix::BooleanMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : BooleanMatrix(RealMatrix(rows)) {}

BooleanMatrix BooleanMatrix::identity(std::size_t n) { return BooleanMatrix(RealMatrix::identity(n)); }

BooleanMatrix BooleanMatrix::ones(std::size_t rows, std::size_t cols) {
    return BooleanMatrix(RealMatrix::ones(rows, cols));
}

namespace detail {

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

}  // namespace detail

namespace {

template <typename T>
std::vector<T> parse_line(const std::string& line, const char* what) {
    std::istringstream ss(line);
    std::vector<T> out;
    std::string tok;
    while (ss >> tok) {
        std::istringstream ts(tok);
        T v{};
        if (!(ts >> v) || !ts.eof()) fail(ErrorKind::ParseError, std::string("bad ") + what + " token '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

RealMatrix read_matrix(std::istream& in) {
    std::string line;
    if (!detail::next_content_line(in, line)) fail(ErrorKind::ParseError, "missing matrix header");
    auto header = parse_line<long long>(line, "header");
    if (header.size() != 2 || header[0] <= 0 || header[1] <= 0)
        fail(ErrorKind::ParseError, "matrix header must be two positive integers 'rows cols'");
    const auto rows = static_cast<std::size_t>(header[0]);
    const auto cols = static_cast<std::size_t>(header[1]);
    std::vector<double> entries;
    entries.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!detail::next_content_line(in, line))
            fail(ErrorKind::ParseError, "expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
        auto vals = parse_line<double>(line, "entry");
        if (vals.size() != cols)
            fail(ErrorKind::ParseError, "row " + std::to_string(r + 1) + " has " + std::to_string(vals.size()) +
                                            " entries, expected " + std::to_string(cols));
        for (double v : vals)
            if (!std::isfinite(v)) fail(ErrorKind::ParseError, "non-finite entry in row " + std::to_string(r + 1));
        entries.insert(entries.end(), vals.begin(), vals.end());
    }
    return RealMatrix(rows, cols, std::move(entries));
}

RealMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
    RealMatrix m = read_matrix(in);
    std::string extra;
    if (detail::next_content_line(in, extra)) fail(ErrorKind::ParseError, "trailing content after matrix in '" + path + "'");
    return m;
}

BooleanMatrix read_boolean_matrix(std::istream& in) {
    RealMatrix m = read_matrix(in);
    if (!is_boolean(m)) fail(ErrorKind::ParseError, "boolean matrix has an entry other than 0 or 1");
    return BooleanMatrix(std::move(m));
}

void write_matrix(std::ostream& out, const RealMatrix& m) {
    const auto old_prec = out.precision(std::numeric_limits<double>::max_digits10);
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << m(r, c);
        }
        out << '\n';
    }
    out.precision(old_prec);
}

void write_matrix_file(const std::string& path, const RealMatrix& m) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    write_matrix(out, m);
}

}  // namespace qfp
