#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "regioncert/linalg.hpp"
#include "regioncert/network.hpp"
#include "regioncert/random.hpp"

namespace testutil {

using regioncert::Matrix;
using regioncert::Rng;
using regioncert::Vector;

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(lo, hi);
    return m;
}

inline Vector random_vector(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

// A rank-r product of random n x r and r x m factors.
inline Matrix low_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t r) {
    return random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
}

inline Matrix permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    rng.shuffle(std::span<std::size_t>(p));
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, p[i]) = 1.0;
    return m;
}

inline std::size_t count_nonzero(const Matrix& m) {
    std::size_t k = 0;
    for (double x : m.entries()) k += x != 0.0;
    return k;
}

}  // namespace testutil
