#pragma once

#include <span>

#include "regioncert/linalg.hpp"

namespace regioncert {

/// Axis-aligned box { lower < x < upper } (or <= when closed). Infinite
/// bounds are allowed; Rect(u) is lower = u, upper = +inf.
struct Rect {
    Vector lower;
    Vector upper;
    bool closed = true;

    static Rect upper_orthant(Vector corner, bool closed = true);
    /// Box spanned by the element-wise min and max of a and b.
    static Rect between(std::span<const double> a, std::span<const double> b, bool closed = true);

    std::size_t dim() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const;
    bool bounded() const noexcept;
};

/// h(x) = W x + b.
struct AffineMap {
    Matrix weights;
    Vector bias;

    Vector operator()(std::span<const double> x) const;
    std::size_t in_dim() const noexcept { return weights.cols(); }
    std::size_t out_dim() const noexcept { return weights.rows(); }
};

// Constructive images of rectangles under affine maps whose weight matrix
// splits as [W1 W2] with W1 invertible (see ColumnSplit). Each image routine
// checks its hypotheses (throwing PreconditionError naming the failed one)
// and the matching preimage routine returns an explicit x mapping onto y.
// `tol` is slack on the element-wise hypotheses.

/// W >= 0 and V >= 0: the image of closed-Rect(u) is closed-Rect(h(u)).
Rect rect_image_halfopen(const AffineMap& h, const ColumnSplit& split, std::span<const double> u,
                         double tol = 0.0);

/// For y >= h(u): x = u + [V (y - h(u)) on the basis columns, 0 elsewhere],
/// so x >= u and h(x) = y.
Vector halfopen_preimage(const AffineMap& h, const ColumnSplit& split, std::span<const double> u,
                         std::span<const double> y, double tol = 0.0);

/// W >= 0, V >= 0, u1 <= u2 and U * du_rest <= 0: the image of
/// closed-Rect(u1, u2) is closed-Rect(h(u1), h(u2)).
Rect rect_image_bounded(const AffineMap& h, const ColumnSplit& split, std::span<const double> u1,
                        std::span<const double> u2, double tol = 0.0);

/// For y in closed-Rect(h(u1), h(u2)):
///   x = u1 + [ sum_i V_col(i) * (W_row(i) . du) * lambda_i ; 0 ],
///   lambda_i = (y_i - v1_i) / (v2_i - v1_i)   (0 on degenerate axes).
/// The result lies in closed-Rect(u1, u2).
Vector bounded_preimage(const AffineMap& h, const ColumnSplit& split, std::span<const double> u1,
                        std::span<const double> u2, std::span<const double> y, double tol = 0.0);

/// V >= 0 and V b <= 0, v >= 0: returns x >= 0 with h(x) = v. For v = 0,
/// x = [-V b ; 0]; otherwise x = sum_i v_i [V(1_i - b / sum(v)) ; 0].
Vector relu_preimage(const AffineMap& h, const ColumnSplit& split, std::span<const double> v, double tol = 0.0);

/// Element-wise ReLU of u.
Vector relu(std::span<const double> u);

/// relu(lambda u + (1 - lambda) relu(u)) == relu(u), compared exactly.
bool relu_segment_identity(std::span<const double> u, double lambda);

}  // namespace regioncert
