#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regioncert/linalg.hpp"
#include "regioncert/network.hpp"

namespace regioncert {

/// The sufficient conditions for connected decision regions that can be
/// checked mechanically, in report order.
enum class TheoremId {
    SurjectiveBijective,  // hidden activations map R onto R (leaky ReLU)
    HalfBounded,          // finite lower limit, unbounded above (softplus, ELU)
    Bounded,              // finite limits on both sides (sigmoid, tanh)
    ReluDeep,             // ReLU, inverse-positive W1 with V*b <= 0 per layer
    ReluOneLayer,         // ReLU, single hidden layer, d >= n1, full rank
};

inline constexpr std::array<TheoremId, 5> kAllTheorems = {
    TheoremId::SurjectiveBijective, TheoremId::HalfBounded, TheoremId::Bounded,
    TheoremId::ReluDeep,            TheoremId::ReluOneLayer,
};

std::string_view theorem_name(TheoremId id) noexcept;
std::optional<TheoremId> parse_theorem(std::string_view name) noexcept;

enum class Verdict { Certified, Refuted, Inapplicable };
std::string_view verdict_name(Verdict v) noexcept;

struct ClauseResult {
    std::string name;
    bool pass = true;
    std::string witness;  // empty on pass
};

struct LayerSplitChoice {
    std::size_t layer = 0;  // 1-based
    std::vector<std::size_t> basis_cols;
};

/// Verdict of one checker. Certified iff every clause passed; Inapplicable
/// iff the activation-class clause failed.
struct CertificateReport {
    TheoremId theorem{};
    Verdict verdict = Verdict::Refuted;
    std::vector<ClauseResult> clauses;
    std::vector<LayerSplitChoice> split_choices;

    const ClauseResult* first_failure() const noexcept;
};

struct CertifyOptions {
    double rank_tol = 1e-9;
    /// Slack for the element-wise theorem inequalities (W >= -slack, ...).
    double slack = 0.0;
    SplitMode split = SplitMode::greedy();
    /// Apply the layer-l weight conditions of the bounded/half-bounded
    /// theorems to l = L as well as 2..L-1.
    bool include_output_layer = true;
    /// Require only W1 >= 0 (not all of W) in the non-negativity clause.
    bool basis_only_nonneg = false;
};

/// Per-layer lower/upper corner of the box that contains f_l(R^d) for
/// bounded activations. lower[0]/upper[0] describe layer 1.
struct BoundRecursion {
    std::vector<Vector> lower;
    std::vector<Vector> upper;

    Vector delta(std::size_t layer) const;  // 1-based, upper - lower
};

/// Box corners u1^l, u2^l for l = 1..L-1: u^1 = [a1], [a2] from layer 1's
/// activation limits, then u^l = sigma_l(W_l u^{l-1} + b_l).
/// Throws PreconditionError when layer 1's activation is not bounded.
BoundRecursion bound_recursion(const Network& net);

ClauseResult check_pyramidal(const Network& net);
/// rank(W_l) == min(n_l, n_{l-1}) for l in [first, last] (1-based, inclusive).
ClauseResult check_full_rank(const Network& net, std::size_t first, std::size_t last, double tol);

CertificateReport certify_surjective_bijective(const Network& net, const CertifyOptions& opts = {});
CertificateReport certify_half_bounded(const Network& net, const CertifyOptions& opts = {});
CertificateReport certify_bounded(const Network& net, const CertifyOptions& opts = {});
CertificateReport certify_relu_deep(const Network& net, const CertifyOptions& opts = {});
CertificateReport certify_relu_one_layer(const Network& net, const CertifyOptions& opts = {});

CertificateReport certify(TheoremId id, const Network& net, const CertifyOptions& opts = {});
/// Every checker, in kAllTheorems order.
std::vector<CertificateReport> certify_all(const Network& net, const CertifyOptions& opts = {});

bool any_certified(const std::vector<CertificateReport>& reports) noexcept;

}  // namespace regioncert
