#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace regioncert {

using Vector = std::vector<double>;

/// Dense row-major matrix of finite doubles.
///
/// Construction rejects NaN/Inf, so every Matrix in the program is finite.
/// Element access is unchecked in release builds.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector column(std::size_t c) const;
    const std::vector<double>& entries() const noexcept { return data_; }

    Matrix transpose() const;
    /// Columns `idx` (in the given order) as a new rows() x idx.size() matrix.
    Matrix select_columns(std::span<const std::size_t> idx) const;

    double max_abs() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

/// Largest |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

bool all_finite(std::span<const double> v) noexcept;

/// Numerical rank by row reduction with partial pivoting. A pivot counts
/// iff |pivot| > tol * max_abs_entry(m).
std::size_t rank(const Matrix& m, double tol);

/// Gauss-Jordan inverse. Throws SingularMatrix when a pivot falls at or
/// below tol * max_abs_entry(m).
Matrix invert(const Matrix& m, double tol);
std::optional<Matrix> try_invert(const Matrix& m, double tol);

/// A choice of n linearly independent columns of an n x k matrix W
/// (the basis W1) and the remaining columns W2, together with
/// V = W1^-1 and U solving W1 * U = W2.
struct ColumnSplit {
    std::vector<std::size_t> basis_cols;
    std::vector<std::size_t> rest_cols;
    Matrix w1;
    Matrix w2;
    Matrix v;
    Matrix u;  // n x (k - n); zero columns when rest_cols is empty
};

struct SplitMode {
    enum class Kind { Greedy, Exhaustive };
    Kind kind = Kind::Greedy;
    std::size_t budget = 10000;

    static SplitMode greedy() { return {}; }
    static SplitMode exhaustive(std::size_t budget = 10000) { return {Kind::Exhaustive, budget}; }
};

struct SplitEnumeration {
    std::vector<ColumnSplit> splits;
    std::size_t candidates_examined = 0;
    bool truncated = false;
};

/// Split chosen by leftmost-pivot column selection during row reduction.
/// Throws RankDeficient when rank(m) < rows or m has fewer columns than rows.
ColumnSplit column_split_greedy(const Matrix& m, double tol);

/// Every invertible split, index sets in lexicographic order, examining at
/// most `budget` candidate index sets.
SplitEnumeration column_split_exhaustive(const Matrix& m, double tol, std::size_t budget = 10000);

/// Builds the split for an explicit basis; nullopt when W1 is singular.
std::optional<ColumnSplit> make_split(const Matrix& m, std::span<const std::size_t> basis, double tol);

bool is_nonneg(const Matrix& m, double tol = 0.0) noexcept;
bool is_nonneg(std::span<const double> v, double tol = 0.0) noexcept;

/// m = D * P with D positive diagonal and P a permutation matrix:
/// row i of m holds its only nonzero, diag[i], in column perm[i].
struct MonomialFactors {
    Vector diag;
    std::vector<std::size_t> perm;

    Matrix reconstruct() const;
};

std::optional<MonomialFactors> is_monomial(const Matrix& m, double tol);

}  // namespace regioncert
