#include "regioncert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "regioncert/error.hpp"

namespace regioncert {

namespace {

void require_finite(std::span<const double> v, const char* what) {
    if (!all_finite(v)) {
        throw InvalidInput(std::string(what) + ": non-finite entry");
    }
}

// Row-reduces a copy of m and returns the pivot columns in order.
std::vector<std::size_t> pivot_columns(const Matrix& m, double tol) {
    require_finite(m.entries(), "matrix");
    const double scale = m.max_abs();
    std::vector<std::size_t> pivots;
    if (scale == 0.0) {
        return pivots;
    }
    const double threshold = tol * scale;
    Matrix a = m;
    const std::size_t rows = a.rows();
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < rows; ++c) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (std::abs(a(i, c)) > std::abs(a(best, c))) best = i;
        }
        if (!(std::abs(a(best, c)) > threshold)) continue;
        if (best != r) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(best, j), a(r, j));
        }
        const double p = a(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const double f = a(i, c) / p;
            if (f == 0.0) continue;
            a(i, c) = 0.0;
            for (std::size_t j = c + 1; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (!std::isfinite(fill)) throw InvalidInput("matrix: non-finite fill value");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw InvalidInput("matrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                           std::to_string(data_.size()));
    }
    require_finite(data_, "matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InvalidInput("matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_, "matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    require_finite(m.data_, "matrix");
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
    Matrix out(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < idx.size(); ++j) out(r, j) = (*this)(r, idx[j]);
    return out;
}

double Matrix::max_abs() const noexcept {
    double best = 0.0;
    for (double x : data_) best = std::max(best, std::abs(x));
    return best;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw InvalidInput("matrix product: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw InvalidInput("matrix-vector product: dimension mismatch");
    Vector out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        const auto row = a.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) s += row[j] * x[j];
        out[i] = s;
    }
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("max_abs_diff: shape mismatch");
    return max_abs_diff(a.entries(), b.entries());
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidInput("max_abs_diff: length mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

bool all_finite(std::span<const double> v) noexcept {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::size_t rank(const Matrix& m, double tol) { return pivot_columns(m, tol).size(); }

std::optional<Matrix> try_invert(const Matrix& m, double tol) {
    if (!m.square()) throw InvalidInput("invert: matrix is not square");
    require_finite(m.entries(), "matrix");
    const std::size_t n = m.rows();
    const double scale = m.max_abs();
    if (n == 0) return Matrix();
    if (scale == 0.0) return std::nullopt;
    const double threshold = tol * scale;

    Matrix a = m;
    Matrix inv = Matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = c;
        for (std::size_t i = c + 1; i < n; ++i) {
            if (std::abs(a(i, c)) > std::abs(a(best, c))) best = i;
        }
        if (!(std::abs(a(best, c)) > threshold)) return std::nullopt;
        if (best != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(best, j), a(c, j));
                std::swap(inv(best, j), inv(c, j));
            }
        }
        const double p = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= p;
            inv(c, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c) continue;
            const double f = a(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Matrix invert(const Matrix& m, double tol) {
    auto inv = try_invert(m, tol);
    if (!inv) throw SingularMatrix("invert: matrix is singular at tolerance " + std::to_string(tol));
    return *std::move(inv);
}

std::optional<ColumnSplit> make_split(const Matrix& m, std::span<const std::size_t> basis, double tol) {
    if (basis.size() != m.rows()) throw InvalidInput("make_split: basis size must equal row count");
    ColumnSplit split;
    split.basis_cols.assign(basis.begin(), basis.end());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (std::find(basis.begin(), basis.end(), c) == basis.end()) split.rest_cols.push_back(c);
    }
    if (split.basis_cols.size() + split.rest_cols.size() != m.cols()) {
        throw InvalidInput("make_split: basis columns must be distinct and in range");
    }
    split.w1 = m.select_columns(split.basis_cols);
    split.w2 = m.select_columns(split.rest_cols);
    auto v = try_invert(split.w1, tol);
    if (!v) return std::nullopt;
    split.v = *std::move(v);
    split.u = split.v * split.w2;
    return split;
}

ColumnSplit column_split_greedy(const Matrix& m, double tol) {
    if (m.cols() < m.rows()) throw RankDeficient("column_split: fewer columns than rows");
    const auto pivots = pivot_columns(m, tol);
    if (pivots.size() < m.rows()) {
        throw RankDeficient("column_split: rank " + std::to_string(pivots.size()) + " < " +
                            std::to_string(m.rows()) + " rows");
    }
    auto split = make_split(m, pivots, tol);
    if (!split) throw RankDeficient("column_split: pivot columns are numerically singular");
    return *std::move(split);
}

SplitEnumeration column_split_exhaustive(const Matrix& m, double tol, std::size_t budget) {
    const std::size_t n = m.rows();
    const std::size_t k = m.cols();
    if (k < n) throw RankDeficient("column_split: fewer columns than rows");
    if (rank(m, tol) < n) throw RankDeficient("column_split: matrix is rank deficient");

    SplitEnumeration out;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        if (out.candidates_examined == budget) {
            out.truncated = true;
            break;
        }
        ++out.candidates_examined;
        if (auto s = make_split(m, idx, tol)) out.splits.push_back(*std::move(s));

        // next combination in lexicographic order
        std::size_t i = n;
        while (i > 0 && idx[i - 1] == k - n + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

bool is_nonneg(const Matrix& m, double tol) noexcept { return is_nonneg(m.entries(), tol); }

bool is_nonneg(std::span<const double> v, double tol) noexcept {
    return std::all_of(v.begin(), v.end(), [tol](double x) { return x >= -tol; });
}

Matrix MonomialFactors::reconstruct() const {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, perm[i]) = diag[i];
    return m;
}

std::optional<MonomialFactors> is_monomial(const Matrix& m, double tol) {
    if (!m.square()) return std::nullopt;
    const std::size_t n = m.rows();
    MonomialFactors f;
    f.diag.resize(n);
    f.perm.resize(n);
    std::vector<bool> col_used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t hits = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double x = m(i, j);
            if (std::abs(x) <= tol) continue;
            if (x < 0.0 || ++hits > 1 || col_used[j]) return std::nullopt;
            col_used[j] = true;
            f.diag[i] = x;
            f.perm[i] = j;
        }
        if (hits != 1) return std::nullopt;
    }
    return f;
}

}  // namespace regioncert
