#include "regioncert/rect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "regioncert/error.hpp"

namespace regioncert {

namespace {

void check_split(const AffineMap& h, const ColumnSplit& split) {
    if (h.bias.size() != h.out_dim()) throw InvalidInput("affine map: bias length mismatch");
    if (split.basis_cols.size() != h.out_dim() ||
        split.basis_cols.size() + split.rest_cols.size() != h.in_dim() || split.v.rows() != h.out_dim()) {
        throw InvalidInput("column split does not match the affine map's shape");
    }
}

void require_dim(std::span<const double> x, std::size_t n, const char* what) {
    if (x.size() != n) throw InvalidInput(std::string(what) + ": dimension mismatch");
}

void require_nonneg(const Matrix& m, double tol, const char* what) {
    if (!is_nonneg(m, tol)) throw PreconditionError(std::string(what) + " has a negative entry");
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
    Vector d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

void require_rest_bound(const ColumnSplit& split, std::span<const double> du, double tol) {
    Vector du_rest;
    for (std::size_t c : split.rest_cols) du_rest.push_back(du[c]);
    const Vector ud = split.u * du_rest;
    for (double x : ud)
        if (x > tol) throw PreconditionError("U * du_rest has a positive entry");
}

}  // namespace

Rect Rect::upper_orthant(Vector corner, bool closed) {
    Vector upper(corner.size(), std::numeric_limits<double>::infinity());
    return {std::move(corner), std::move(upper), closed};
}

Rect Rect::between(std::span<const double> a, std::span<const double> b, bool closed) {
    require_dim(b, a.size(), "Rect::between");
    Rect r{Vector(a.size()), Vector(a.size()), closed};
    for (std::size_t i = 0; i < a.size(); ++i) {
        r.lower[i] = std::min(a[i], b[i]);
        r.upper[i] = std::max(a[i], b[i]);
    }
    return r;
}

bool Rect::contains(std::span<const double> x) const {
    require_dim(x, dim(), "Rect::contains");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (closed ? !(lower[i] <= x[i] && x[i] <= upper[i]) : !(lower[i] < x[i] && x[i] < upper[i])) {
            return false;
        }
    }
    return true;
}

bool Rect::bounded() const noexcept {
    for (std::size_t i = 0; i < dim(); ++i)
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) return false;
    return true;
}

Vector AffineMap::operator()(std::span<const double> x) const {
    Vector y = weights * x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += bias[i];
    return y;
}

Rect rect_image_halfopen(const AffineMap& h, const ColumnSplit& split, std::span<const double> u, double tol) {
    check_split(h, split);
    require_dim(u, h.in_dim(), "rect_image_halfopen");
    require_nonneg(h.weights, tol, "W");
    require_nonneg(split.v, tol, "V");
    return Rect::upper_orthant(h(u), true);
}

Vector halfopen_preimage(const AffineMap& h, const ColumnSplit& split, std::span<const double> u,
                         std::span<const double> y, double tol) {
    const Rect image = rect_image_halfopen(h, split, u, tol);
    require_dim(y, h.out_dim(), "halfopen_preimage");
    if (!image.contains(y)) throw PreconditionError("y is not in closed-Rect(h(u))");
    const Vector a1 = split.v * subtract(y, image.lower);
    Vector x(u.begin(), u.end());
    for (std::size_t j = 0; j < a1.size(); ++j) x[split.basis_cols[j]] += a1[j];
    return x;
}

Rect rect_image_bounded(const AffineMap& h, const ColumnSplit& split, std::span<const double> u1,
                        std::span<const double> u2, double tol) {
    check_split(h, split);
    require_dim(u1, h.in_dim(), "rect_image_bounded");
    require_dim(u2, h.in_dim(), "rect_image_bounded");
    for (std::size_t i = 0; i < u1.size(); ++i)
        if (u1[i] > u2[i]) throw PreconditionError("u1 <= u2 violated");
    require_nonneg(h.weights, tol, "W");
    require_nonneg(split.v, tol, "V");
    require_rest_bound(split, subtract(u2, u1), tol);
    return Rect{h(u1), h(u2), true};
}

Vector bounded_preimage(const AffineMap& h, const ColumnSplit& split, std::span<const double> u1,
                        std::span<const double> u2, std::span<const double> y, double tol) {
    const Rect image = rect_image_bounded(h, split, u1, u2, tol);
    require_dim(y, h.out_dim(), "bounded_preimage");
    if (!image.contains(y)) throw PreconditionError("y is not in closed-Rect(h(u1), h(u2))");

    const Vector du = subtract(u2, u1);
    const std::size_t n = h.out_dim();
    Vector a(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double span = image.upper[i] - image.lower[i];
        const double lambda = span > 0.0 ? (y[i] - image.lower[i]) / span : 0.0;
        if (lambda == 0.0) continue;
        double wd = 0.0;  // W_row(i) . du
        const auto row = h.weights.row(i);
        for (std::size_t j = 0; j < du.size(); ++j) wd += row[j] * du[j];
        for (std::size_t r = 0; r < n; ++r) a[r] += split.v(r, i) * wd * lambda;
    }
    Vector x(u1.begin(), u1.end());
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t c = split.basis_cols[j];
        // the exact point is <= u2; trim rounding overshoot
        x[c] = std::min(x[c] + a[j], u2[c]);
    }
    return x;
}

Vector relu_preimage(const AffineMap& h, const ColumnSplit& split, std::span<const double> v, double tol) {
    check_split(h, split);
    require_dim(v, h.out_dim(), "relu_preimage");
    require_nonneg(split.v, tol, "V");
    const Vector vb = split.v * h.bias;
    for (double x : vb)
        if (x > tol) throw PreconditionError("V * b has a positive entry");
    double total = 0.0;
    for (double x : v) {
        if (x < -tol) throw PreconditionError("v has a negative entry");
        total += x;
    }

    const std::size_t n = h.out_dim();
    Vector a(n, 0.0);
    if (total == 0.0) {
        for (std::size_t r = 0; r < n; ++r) a[r] = -vb[r];
    } else {
        // u_i = V 1_i - (V b) / sum(v), each >= 0; x = sum_i v_i u_i
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0.0) continue;
            for (std::size_t r = 0; r < n; ++r) a[r] += v[i] * (split.v(r, i) - vb[r] / total);
        }
    }
    Vector x(h.in_dim(), 0.0);
    for (std::size_t j = 0; j < n; ++j) x[split.basis_cols[j]] = a[j];
    return x;
}

Vector relu(std::span<const double> u) {
    Vector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] > 0.0 ? u[i] : 0.0;
    return out;
}

bool relu_segment_identity(std::span<const double> u, double lambda) {
    const Vector ru = relu(u);
    // lambda u + (1 - lambda) relu(u), written as relu(u) + lambda (u - relu(u)) so the
    // non-negative coordinates stay bit-exact fixed points
    Vector mix(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) mix[i] = ru[i] + lambda * (u[i] - ru[i]);
    return relu(mix) == ru;
}

}  // namespace regioncert
