#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qfp {

// Dense real matrix, row-major. Entries are always finite.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    RealMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static RealMatrix identity(std::size_t n);
    static RealMatrix ones(std::size_t rows, std::size_t cols);
    static RealMatrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> data() const noexcept { return data_; }

    RealMatrix transpose() const;

    friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator+(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator*(double s, const RealMatrix& a);

double max_abs_diff(const RealMatrix& a, const RealMatrix& b);
double max_abs(const RealMatrix& a);
bool is_symmetric(const RealMatrix& a, double tol);

// Zero-pads `a` to rows x cols (both must be >= the current shape).
RealMatrix zero_pad(const RealMatrix& a, std::size_t rows, std::size_t cols);

// A RealMatrix whose entries are exactly 0 or 1.
class BooleanMatrix {
public:
    BooleanMatrix() = default;
    explicit BooleanMatrix(RealMatrix m);
    BooleanMatrix(std::size_t rows, std::size_t cols) : m_(rows, cols) {}
    BooleanMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static BooleanMatrix identity(std::size_t n);
    static BooleanMatrix ones(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return m_.rows(); }
    std::size_t cols() const noexcept { return m_.cols(); }
    bool is_square() const noexcept { return m_.is_square(); }

    bool operator()(std::size_t r, std::size_t c) const { return m_(r, c) != 0.0; }
    void set(std::size_t r, std::size_t c, bool v) { m_(r, c) = v ? 1.0 : 0.0; }

    const RealMatrix& real() const noexcept { return m_; }

    friend bool operator==(const BooleanMatrix&, const BooleanMatrix&) = default;

private:
    RealMatrix m_;
};

bool is_boolean(const RealMatrix& m);

// Matrix text format: first non-comment line "rows cols", followed by `rows`
// lines of `cols` numbers. '#' starts a comment that runs to end of line.
RealMatrix read_matrix(std::istream& in);
RealMatrix read_matrix_file(const std::string& path);
BooleanMatrix read_boolean_matrix(std::istream& in);
void write_matrix(std::ostream& out, const RealMatrix& m);
void write_matrix_file(const std::string& path, const RealMatrix& m);

namespace detail {
// Returns the next line that is not blank after comment stripping; false at EOF.
bool next_content_line(std::istream& in, std::string& line);
}  // namespace detail

}  // namespace qfp
