#include "regioncert/lemma_campaign.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "regioncert/random.hpp"
#include "regioncert/rect.hpp"
#include "regioncert/synthesis.hpp"

namespace regioncert {

namespace {

constexpr std::size_t kMaxRows = 6;
constexpr std::size_t kMaxCols = 10;
constexpr double kScale = 3.0;

struct Case {
    AffineMap h;
    ColumnSplit split;
};

enum class Rest { NonNeg, Any };

// n x m map whose basis columns hold a monomial block; about three quarters
// of the other columns are drawn per `fill`, the rest stay zero.
Case monomial_case(Rng& rng, Rest fill, std::vector<bool>* nonzero_rest = nullptr) {
    const std::size_t n = 1 + rng.uniform_index(kMaxRows);
    const std::size_t m = n + rng.uniform_index(kMaxCols - n + 1);
    std::vector<std::size_t> cols(m);
    std::iota(cols.begin(), cols.end(), 0);
    rng.shuffle(std::span<std::size_t>(cols));
    std::vector<std::size_t> basis(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(basis.begin(), basis.end());

    const Matrix mono = gen_monomial(n, rng, kScale);
    Matrix w(n, m);
    std::vector<bool> in_basis(m, false);
    for (std::size_t j = 0; j < n; ++j) {
        in_basis[basis[j]] = true;
        for (std::size_t r = 0; r < n; ++r) w(r, basis[j]) = mono(r, j);
    }
    if (nonzero_rest) nonzero_rest->assign(m, false);
    for (std::size_t c = 0; c < m; ++c) {
        if (in_basis[c] || rng.coin(0.25)) continue;  // some rest columns stay zero
        if (nonzero_rest) (*nonzero_rest)[c] = true;
        for (std::size_t r = 0; r < n; ++r)
            w(r, c) = fill == Rest::NonNeg ? rng.uniform(0.0, kScale) : rng.uniform(-kScale, kScale);
    }
    Vector b(n);
    for (auto& x : b) x = rng.uniform(-kScale, kScale);
    auto split = make_split(w, basis, 1e-12);
    return {AffineMap{std::move(w), std::move(b)}, std::move(*split)};
}

double residual(const AffineMap& h, std::span<const double> x, std::span<const double> y) {
    return max_abs_diff(h(x), y);
}

// Non-negative offset with some exact zeros.
double offset(Rng& rng) { return rng.coin(0.2) ? 0.0 : rng.uniform(0.0, 2.0 * kScale); }

void trial_halfopen(Rng& rng, LemmaReport& rep) {
    const Case c = monomial_case(rng, Rest::NonNeg);
    Vector u(c.h.in_dim());
    for (auto& x : u) x = rng.uniform(-kScale, kScale);
    Vector y = c.h(u);
    for (auto& x : y) x += offset(rng);
    const Vector x = halfopen_preimage(c.h, c.split, u, y);
    rep.max_residual = std::max(rep.max_residual, residual(c.h, x, y));
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= u[j])) {
            ++rep.membership_failures;
            break;
        }
    }
}

void trial_bounded(Rng& rng, LemmaReport& rep) {
    std::vector<bool> nonzero_rest;
    const Case c = monomial_case(rng, Rest::NonNeg, &nonzero_rest);
    const std::size_t m = c.h.in_dim();
    Vector u1(m), u2(m);
    for (std::size_t j = 0; j < m; ++j) {
        u1[j] = rng.uniform(-kScale, kScale);
        // a populated rest column needs du_c = 0 so that U * du_rest <= 0
        u2[j] = nonzero_rest[j] ? u1[j] : u1[j] + offset(rng);
    }
    const Vector v1 = c.h(u1), v2 = c.h(u2);
    Vector y(v1.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = rng.uniform01();
        const double lambda = r < 0.1 ? 0.0 : r < 0.2 ? 1.0 : rng.uniform01();
        y[i] = std::clamp(v1[i] + lambda * (v2[i] - v1[i]), v1[i], v2[i]);
    }
    const Vector x = bounded_preimage(c.h, c.split, u1, u2, y);
    rep.max_residual = std::max(rep.max_residual, residual(c.h, x, y));
    for (std::size_t j = 0; j < m; ++j) {
        if (!(u1[j] <= x[j] && x[j] <= u2[j])) {
            ++rep.membership_failures;
            break;
        }
    }
}

void trial_relu_preimage(Rng& rng, LemmaReport& rep) {
    Case c = monomial_case(rng, Rest::Any);
    // b <= 0 with V >= 0 gives V b <= 0
    for (auto& x : c.h.bias) x = rng.coin(0.2) ? 0.0 : -rng.uniform(0.0, kScale);
    Vector v(c.h.out_dim());
    const bool zero = rng.coin(0.1);
    for (auto& x : v) x = zero ? 0.0 : offset(rng);
    const Vector x = relu_preimage(c.h, c.split, v);
    rep.max_residual = std::max(rep.max_residual, residual(c.h, x, v));
    for (double xi : x) {
        if (!(xi >= 0.0)) {
            ++rep.membership_failures;
            break;
        }
    }
}

double segment_coordinate(Rng& rng) {
    switch (rng.uniform_index(6)) {
        case 0: return 0.0;
        case 1: return -0.0;
        case 2: return rng.uniform(-1e-300, 1e-300);
        case 3: return rng.uniform(-1e12, 1e12);
        default: return rng.uniform(-10.0, 10.0);
    }
}

void trial_relu_segment(Rng& rng, LemmaReport& rep) {
    Vector u(1 + rng.uniform_index(kMaxCols));
    for (auto& x : u) x = segment_coordinate(rng);
    const double r = rng.uniform01();
    const double lambda = r < 0.05 ? 0.0 : r < 0.1 ? 1.0 : rng.uniform01();
    if (!relu_segment_identity(u, lambda)) ++rep.membership_failures;
}

}  // namespace

std::string_view lemma_name(LemmaKind kind) noexcept {
    switch (kind) {
        case LemmaKind::RectHalfOpen: return "rect-halfopen";
        case LemmaKind::RectBounded: return "rect-bounded";
        case LemmaKind::ReluPreimage: return "relu-preimage";
        case LemmaKind::ReluSegment: return "relu-segment";
    }
    return "?";
}

std::optional<LemmaKind> parse_lemma(std::string_view name) noexcept {
    for (auto k : {LemmaKind::RectHalfOpen, LemmaKind::RectBounded, LemmaKind::ReluPreimage, LemmaKind::ReluSegment})
        if (lemma_name(k) == name) return k;
    return std::nullopt;
}

LemmaReport run_lemma_campaign(LemmaKind kind, std::size_t trials, std::uint64_t seed) {
    LemmaReport rep;
    rep.kind = kind;
    rep.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, t));
        switch (kind) {
            case LemmaKind::RectHalfOpen: trial_halfopen(rng, rep); break;
            case LemmaKind::RectBounded: trial_bounded(rng, rep); break;
            case LemmaKind::ReluPreimage: trial_relu_preimage(rng, rep); break;
            case LemmaKind::ReluSegment: trial_relu_segment(rng, rep); break;
        }
    }
    return rep;
}

std::string lemma_report_to_text(const LemmaReport& report) {
    std::ostringstream os;
    os.precision(3);
    os << lemma_name(report.kind) << ": " << (report.pass() ? "pass" : "FAIL") << "\n"
       << "trials: " << report.trials << "\n"
       << "max residual: " << std::scientific << report.max_residual << " (tolerance " << report.tolerance << ")\n"
       << "membership failures: " << report.membership_failures << "\n";
    return os.str();
}

}  // namespace regioncert
