#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "regioncert/error.hpp"
#include "regioncert/linalg.hpp"
#include "regioncert/synthesis.hpp"
#include "test_util.hpp"

using namespace regioncert;
using testutil::random_matrix;

namespace {

// Independent rank: singular values above tol * sigma_max.
std::size_t svd_rank(const Matrix& m, double tol) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) k += s(i) > tol * s(0);
    return k;
}

}  // namespace

TEST_CASE("matrix construction validates shape and finiteness") {
    CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>{1, 2, 3}), InvalidInput);
    CHECK_THROWS_AS(Matrix(1, 2, std::vector<double>{1, std::numeric_limits<double>::quiet_NaN()}), InvalidInput);
    CHECK_THROWS_AS(Matrix(1, 1, std::vector<double>{std::numeric_limits<double>::infinity()}), InvalidInput);
    CHECK_THROWS_AS((Matrix{{1, 2}, {3}}), InvalidInput);
    const Matrix m{{1, 2, 3}, {4, 5, 6}};
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(1, 2) == 6);
    CHECK(m.transpose() == Matrix{{1, 4}, {2, 5}, {3, 6}});
    const std::vector<std::size_t> idx{2, 0};
    CHECK(m.select_columns(idx) == Matrix{{3, 1}, {6, 4}});
}

TEST_CASE("products") {
    const Matrix a{{1, 2}, {3, 4}};
    const Matrix b{{0, 1}, {1, 0}};
    CHECK(a * b == Matrix{{2, 1}, {4, 3}});
    const Vector x{1, -1};
    CHECK(a * std::span<const double>(x) == Vector{-1, -1});
    CHECK_THROWS_AS(a * Matrix(3, 1), InvalidInput);
}

TEST_CASE("rank examples") {
    CHECK(rank(Matrix::identity(3), 1e-9) == 3);
    CHECK(rank(Matrix{{1, 2}, {2, 4}}, 1e-9) == 1);
    CHECK(rank(Matrix(3, 4), 1e-9) == 0);
    CHECK(rank(Matrix{{1, 1}, {1, 1 + 1e-12}}, 1e-9) == 1);
}

TEST_CASE("rank agrees with an SVD oracle") {
    Rng rng(11);
    SUBCASE("random 5x7 are full rank") {
        for (int i = 0; i < 100; ++i) {
            const Matrix m = random_matrix(rng, 5, 7);
            CHECK(rank(m, 1e-9) == 5);
            CHECK(svd_rank(m, 1e-9) == 5);
        }
    }
    SUBCASE("low-rank products") {
        for (int i = 0; i < 300; ++i) {
            const std::size_t rows = 1 + rng.uniform_index(8);
            const std::size_t cols = 1 + rng.uniform_index(8);
            const std::size_t r = rng.uniform_index(std::min(rows, cols) + 1);
            const Matrix m = r == 0 ? Matrix(rows, cols) : testutil::low_rank(rng, rows, cols, r);
            INFO("rows=" << rows << " cols=" << cols << " r=" << r);
            CHECK(rank(m, 1e-9) == svd_rank(m, 1e-9));
            CHECK(rank(m, 1e-9) == r);
        }
    }
}

TEST_CASE("rank is transpose invariant") {
    Rng rng(12);
    for (int i = 0; i < 300; ++i) {
        const std::size_t rows = 1 + rng.uniform_index(10);
        const std::size_t cols = 1 + rng.uniform_index(10);
        const Matrix m = rng.coin() ? random_matrix(rng, rows, cols)
                                    : testutil::low_rank(rng, rows, cols, 1 + rng.uniform_index(std::min(rows, cols)));
        CHECK(rank(m, 1e-9) == rank(m.transpose(), 1e-9));
    }
}

TEST_CASE("invert examples") {
    CHECK(max_abs_diff(invert(Matrix{{2, 0}, {0, 4}}, 1e-12), Matrix{{0.5, 0}, {0, 0.25}}) == 0.0);
    CHECK(max_abs_diff(invert(Matrix{{2, 1}, {1, 1}}, 1e-12), Matrix{{1, -1}, {-1, 2}}) < 1e-15);
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const Matrix p = testutil::permutation(rng, 1 + rng.uniform_index(6));
        CHECK(invert(p, 1e-12) == p.transpose());
    }
    CHECK_THROWS_AS(invert(Matrix{{1, 2}, {2, 4}}, 1e-9), SingularMatrix);
    CHECK_THROWS_AS(invert(Matrix(2, 3), 1e-9), InvalidInput);
    CHECK_FALSE(try_invert(Matrix{{1, 2}, {2, 4}}, 1e-9).has_value());
}

TEST_CASE("inverse round trip on well-conditioned matrices") {
    Rng rng(4);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + rng.uniform_index(12);
        Matrix m = random_matrix(rng, n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) += static_cast<double>(n);  // diagonally dominant
        const Matrix r = invert(m, 1e-12);
        CHECK(max_abs_diff(r * m, Matrix::identity(n)) <= 1e-8);
        CHECK(max_abs_diff(m * r, Matrix::identity(n)) <= 1e-8);
    }
}

TEST_CASE("column split examples") {
    const Matrix m{{1, 0, 3}, {0, 1, -2}};
    const ColumnSplit s = column_split_greedy(m, 1e-9);
    CHECK(s.basis_cols == std::vector<std::size_t>{0, 1});
    CHECK(s.rest_cols == std::vector<std::size_t>{2});
    CHECK(s.w1 == Matrix::identity(2));
    CHECK(max_abs_diff(s.u, Matrix{{3}, {-2}}) == 0.0);

    const auto all = column_split_exhaustive(Matrix{{0, 1, 1}, {1, 0, 1}}, 1e-9);
    REQUIRE(all.splits.size() == 3);
    CHECK(all.splits[0].basis_cols == std::vector<std::size_t>{0, 1});
    CHECK(all.splits[1].basis_cols == std::vector<std::size_t>{0, 2});
    CHECK(all.splits[2].basis_cols == std::vector<std::size_t>{1, 2});
    CHECK_FALSE(all.truncated);

    CHECK_THROWS_AS(column_split_greedy(Matrix{{1, 1}, {1, 1 + 1e-12}}, 1e-9), RankDeficient);
    CHECK_THROWS_AS(column_split_greedy(Matrix(3, 2, 1.0), 1e-9), RankDeficient);
}

TEST_CASE("greedy split takes the leftmost independent columns") {
    const Matrix m{{0, 1, 2, 0}, {0, 2, 4, 1}};
    const ColumnSplit s = column_split_greedy(m, 1e-9);
    CHECK(s.basis_cols == std::vector<std::size_t>{1, 3});
    CHECK(s.rest_cols == std::vector<std::size_t>{0, 2});
}

TEST_CASE("exhaustive split respects its budget") {
    Rng rng(5);
    const Matrix m = random_matrix(rng, 3, 9);  // C(9,3) = 84 candidates
    const auto full = column_split_exhaustive(m, 1e-9);
    CHECK(full.candidates_examined == 84);
    CHECK(full.splits.size() == 84);
    CHECK_FALSE(full.truncated);
    const auto cut = column_split_exhaustive(m, 1e-9, 10);
    CHECK(cut.truncated);
    CHECK(cut.candidates_examined == 10);
    CHECK(cut.splits.size() == 10);
}

TEST_CASE("split identities hold on fuzzed full-rank matrices") {
    Rng rng(6);
    double worst_v = 0.0, worst_u = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + rng.uniform_index(12);
        const std::size_t k = n + rng.uniform_index(13 - n);
        const Matrix m = random_matrix(rng, n, k);
        const ColumnSplit s = column_split_greedy(m, 1e-9);

        std::vector<std::size_t> all = s.basis_cols;
        all.insert(all.end(), s.rest_cols.begin(), s.rest_cols.end());
        std::sort(all.begin(), all.end());
        for (std::size_t j = 0; j < k; ++j) REQUIRE(all[j] == j);

        worst_v = std::max(worst_v, max_abs_diff(s.v * s.w1, Matrix::identity(n)));
        if (!s.rest_cols.empty()) worst_u = std::max(worst_u, max_abs_diff(s.w1 * s.u, s.w2));
    }
    CHECK(worst_v <= 1e-8);
    CHECK(worst_u <= 1e-8);
}

TEST_CASE("exhaustive enumeration contains the greedy split") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + rng.uniform_index(4);
        const std::size_t k = n + rng.uniform_index(4);
        Matrix m = random_matrix(rng, n, k);
        if (rng.coin() && k > n) {
            for (std::size_t r = 0; r < n; ++r) m(r, 0) = 0.0;  // force a skipped column
        }
        if (rank(m, 1e-9) < n) continue;
        const ColumnSplit g = column_split_greedy(m, 1e-9);
        const auto all = column_split_exhaustive(m, 1e-9);
        CHECK(std::any_of(all.splits.begin(), all.splits.end(),
                          [&](const ColumnSplit& s) { return s.basis_cols == g.basis_cols; }));
    }
}

TEST_CASE("is_nonneg reading") {
    CHECK(is_nonneg(Matrix{{0, 1}, {2, 3}}));
    CHECK_FALSE(is_nonneg(Matrix{{0, -1e-15}}));
    CHECK(is_nonneg(Matrix{{0, -1e-15}}, 1e-12));
}

TEST_CASE("is_monomial examples") {
    const auto f = is_monomial(Matrix{{0, 3}, {2, 0}}, 1e-12);
    REQUIRE(f);
    CHECK(f->diag == Vector{3, 2});
    CHECK(f->perm == std::vector<std::size_t>{1, 0});
    CHECK(f->reconstruct() == Matrix{{0, 3}, {2, 0}});

    const auto id = is_monomial(Matrix::identity(3), 1e-12);
    REQUIRE(id);
    CHECK(id->diag == Vector{1, 1, 1});
    CHECK(id->perm == std::vector<std::size_t>{0, 1, 2});

    CHECK_FALSE(is_monomial(Matrix{{1, 1}, {0, 1}}, 1e-12));
    CHECK_FALSE(is_monomial(Matrix{{0, -3}, {2, 0}}, 1e-12));
    CHECK_FALSE(is_monomial(Matrix{{1, 0}, {1, 0}}, 1e-12));
    CHECK_FALSE(is_monomial(Matrix(2, 3), 1e-12));
}

TEST_CASE("monomial matrices have non-negative inverses") {
    Rng rng(8);
    for (int i = 0; i < 500; ++i) {
        const Matrix m = gen_monomial(1 + rng.uniform_index(10), rng, rng.uniform(0.1, 5.0));
        const auto f = is_monomial(m, 1e-12);
        REQUIRE(f);
        CHECK(f->reconstruct() == m);
        const Matrix inv = invert(m, 1e-12);
        CHECK(is_nonneg(inv, 1e-12));
    }
}
