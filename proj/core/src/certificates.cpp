#include "regioncert/certificates.hpp"

#include <functional>
#include <sstream>

#include "regioncert/error.hpp"

namespace regioncert {

namespace {

std::string fmt_real(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

std::string fmt_indices(const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i]);
    }
    return s + "}";
}

ClauseResult pass(std::string name) { return {std::move(name), true, {}}; }
ClauseResult fail(std::string name, std::string witness) { return {std::move(name), false, std::move(witness)}; }

// First entry below -tol, as "W3[1,0] = -0.5".
std::optional<std::string> negative_entry(const Matrix& m, double tol, const std::string& label) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) < -tol) {
                return label + "[" + std::to_string(r) + "," + std::to_string(c) + "] = " + fmt_real(m(r, c));
            }
    return std::nullopt;
}

std::optional<std::string> positive_entry(std::span<const double> v, double tol, const std::string& label) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > tol) return label + "[" + std::to_string(i) + "] = " + fmt_real(v[i]);
    return std::nullopt;
}

// V >= 0 for a split. A monomial W1 has inverse P^T D^-1 >= 0, no need to look at V.
std::optional<std::string> inverse_nonneg(const ColumnSplit& s, double slack) {
    if (is_monomial(s.w1, 0.0)) return std::nullopt;
    return negative_entry(s.v, slack, "V");
}

using SplitPredicate = std::function<std::optional<std::string>(const ColumnSplit&)>;

struct SplitSearch {
    std::optional<ColumnSplit> found;
    std::string witness;
};

// Existential search: greedy split first, then (in exhaustive mode) every
// invertible split until one satisfies pred.
SplitSearch search_split(const Matrix& w, const CertifyOptions& opts, const SplitPredicate& pred) {
    SplitSearch out;
    if (w.rows() > w.cols()) {
        out.witness = "weight matrix is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                      "; no square invertible column block";
        return out;
    }
    ColumnSplit greedy;
    try {
        greedy = column_split_greedy(w, opts.rank_tol);
    } catch (const RankDeficient& e) {
        out.witness = e.what();
        return out;
    }
    auto why = pred(greedy);
    if (!why) {
        out.found = std::move(greedy);
        return out;
    }
    out.witness = "basis " + fmt_indices(greedy.basis_cols) + ": " + *why;
    if (opts.split.kind != SplitMode::Kind::Exhaustive) return out;

    auto all = column_split_exhaustive(w, opts.rank_tol, opts.split.budget);
    for (auto& s : all.splits) {
        if (!pred(s)) {
            out.found = std::move(s);
            return out;
        }
    }
    out.witness += "; none of " + std::to_string(all.splits.size()) + " invertible splits passes";
    if (all.truncated) out.witness += " (search truncated at budget " + std::to_string(opts.split.budget) + ")";
    return out;
}

std::string layer_label(std::size_t l) { return "W" + std::to_string(l); }

void add_split_clause(CertificateReport& report, const Network& net, std::size_t l, const std::string& name,
                      const CertifyOptions& opts, const SplitPredicate& pred) {
    auto search = search_split(net.layer(l).weights, opts, pred);
    if (search.found) {
        report.clauses.push_back(pass(name));
        report.split_choices.push_back({l, search.found->basis_cols});
    } else {
        report.clauses.push_back(fail(name, search.witness));
    }
}

void finish(CertificateReport& report) {
    report.verdict = Verdict::Certified;
    for (const auto& c : report.clauses) {
        if (!c.pass) report.verdict = Verdict::Refuted;
    }
}

CertificateReport inapplicable(TheoremId id, std::string witness) {
    CertificateReport r;
    r.theorem = id;
    r.verdict = Verdict::Inapplicable;
    r.clauses.push_back(fail("activation class", std::move(witness)));
    return r;
}

// Checks every hidden activation against `ok`; returns the offending layer.
std::optional<std::string> hidden_activation_outside(const Network& net,
                                                     const std::function<bool(const Activation&)>& ok,
                                                     std::string_view required) {
    for (std::size_t l = 1; l < net.depth(); ++l) {
        const Activation& a = *net.layer(l).activation;
        if (!ok(a)) {
            return "layer " + std::to_string(l) + " uses " + a.to_string() + "; theorem requires " +
                   std::string(required);
        }
    }
    return std::nullopt;
}

void add_common_clauses(CertificateReport& r, const Network& net, const CertifyOptions& opts) {
    r.clauses.push_back(check_pyramidal(net));
    ClauseResult rank_clause = net.depth() > 1 ? check_full_rank(net, 1, net.depth() - 1, opts.rank_tol)
                                               : pass("full rank W1..W(L-1)");
    rank_clause.name = "full rank W1..W(L-1)";
    r.clauses.push_back(std::move(rank_clause));
}

std::size_t last_constrained_layer(const Network& net, const CertifyOptions& opts) {
    return opts.include_output_layer ? net.depth() : net.depth() - 1;
}

}  // namespace

std::string_view theorem_name(TheoremId id) noexcept {
    switch (id) {
        case TheoremId::SurjectiveBijective: return "surjective-bijective";
        case TheoremId::HalfBounded: return "half-bounded";
        case TheoremId::Bounded: return "bounded";
        case TheoremId::ReluDeep: return "relu-deep";
        case TheoremId::ReluOneLayer: return "relu-one-layer";
    }
    return "?";
}

std::optional<TheoremId> parse_theorem(std::string_view name) noexcept {
    for (TheoremId id : kAllTheorems)
        if (theorem_name(id) == name) return id;
    return std::nullopt;
}

std::string_view verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Refuted: return "refuted";
        case Verdict::Inapplicable: return "inapplicable";
    }
    return "?";
}

const ClauseResult* CertificateReport::first_failure() const noexcept {
    for (const auto& c : clauses)
        if (!c.pass) return &c;
    return nullptr;
}

Vector BoundRecursion::delta(std::size_t layer) const {
    const Vector& lo = lower.at(layer - 1);
    const Vector& hi = upper.at(layer - 1);
    Vector d(lo.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = hi[i] - lo[i];
    return d;
}

BoundRecursion bound_recursion(const Network& net) {
    if (net.depth() < 2) throw PreconditionError("bound_recursion: network has no hidden layer");
    const ActivationTraits t = traits(*net.layer(1).activation);
    if (!t.lower_finite() || !t.upper_finite()) {
        throw PreconditionError("bound_recursion: layer 1 activation is not bounded");
    }
    BoundRecursion rec;
    const std::size_t n1 = net.layer(1).out_dim();
    rec.lower.emplace_back(n1, t.lower_limit);
    rec.upper.emplace_back(n1, t.upper_limit);
    for (std::size_t l = 2; l < net.depth(); ++l) {
        const Layer& layer = net.layer(l);
        auto step = [&](const Vector& prev) {
            Vector z = layer.weights * prev;
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = layer.activation->apply(z[i] + layer.bias[i]);
            return z;
        };
        rec.lower.push_back(step(rec.lower.back()));
        rec.upper.push_back(step(rec.upper.back()));
    }
    return rec;
}

ClauseResult check_pyramidal(const Network& net) {
    const auto w = net.widths();
    // n_0 >= n_1 >= ... >= n_{L-1}; the output width is unconstrained
    for (std::size_t k = 1; k + 1 < w.size(); ++k) {
        if (w[k] > w[k - 1]) {
            return fail("pyramidal", "n" + std::to_string(k - 1) + "=" + std::to_string(w[k - 1]) + " < n" +
                                         std::to_string(k) + "=" + std::to_string(w[k]));
        }
    }
    return pass("pyramidal");
}

ClauseResult check_full_rank(const Network& net, std::size_t first, std::size_t last, double tol) {
    const std::string name = "full rank W" + std::to_string(first) + "..W" + std::to_string(last);
    for (std::size_t l = first; l <= last; ++l) {
        const Matrix& w = net.layer(l).weights;
        const std::size_t r = rank(w, tol);
        const std::size_t full = std::min(w.rows(), w.cols());
        if (r != full) {
            return fail(name, "layer " + std::to_string(l) + ": rank " + std::to_string(r) + " < " +
                                  std::to_string(full));
        }
    }
    return pass(name);
}

CertificateReport certify_surjective_bijective(const Network& net, const CertifyOptions& opts) {
    const TheoremId id = TheoremId::SurjectiveBijective;
    if (auto bad = hidden_activation_outside(
            net, [](const Activation& a) { return traits(a).surjective_onto_reals; },
            "a bijection of R onto R (leaky_relu)")) {
        return inapplicable(id, *bad);
    }
    CertificateReport r;
    r.theorem = id;
    r.clauses.push_back(pass("activation class"));
    add_common_clauses(r, net, opts);
    finish(r);
    return r;
}

CertificateReport certify_half_bounded(const Network& net, const CertifyOptions& opts) {
    const TheoremId id = TheoremId::HalfBounded;
    if (net.depth() < 2) return inapplicable(id, "network has no hidden layer");
    if (auto bad = hidden_activation_outside(
            net,
            [](const Activation& a) {
                const auto t = traits(a);
                return t.bijective_onto_range && t.lower_finite() && !t.upper_finite();
            },
            "finite lower limit and unbounded upper limit (softplus, elu)")) {
        return inapplicable(id, *bad);
    }
    CertificateReport r;
    r.theorem = id;
    r.clauses.push_back(pass("activation class"));
    add_common_clauses(r, net, opts);

    for (std::size_t l = 2; l <= last_constrained_layer(net, opts); ++l) {
        const std::string w = layer_label(l);
        if (!opts.basis_only_nonneg) {
            auto neg = negative_entry(net.layer(l).weights, opts.slack, w);
            r.clauses.push_back(neg ? fail(w + " >= 0", *neg) : pass(w + " >= 0"));
        }
        add_split_clause(r, net, l, w + " split: V >= 0", opts, [&](const ColumnSplit& s) {
            if (opts.basis_only_nonneg) {
                if (auto neg = negative_entry(s.w1, opts.slack, "W1")) return neg;
            }
            return inverse_nonneg(s, opts.slack);
        });
    }
    finish(r);
    return r;
}

CertificateReport certify_bounded(const Network& net, const CertifyOptions& opts) {
    const TheoremId id = TheoremId::Bounded;
    if (net.depth() < 2) return inapplicable(id, "network has no hidden layer");
    if (auto bad = hidden_activation_outside(
            net,
            [](const Activation& a) {
                const auto t = traits(a);
                return t.bijective_onto_range && t.lower_finite() && t.upper_finite();
            },
            "finite lower and upper limits (sigmoid, tanh)")) {
        return inapplicable(id, *bad);
    }
    CertificateReport r;
    r.theorem = id;
    r.clauses.push_back(pass("activation class"));
    add_common_clauses(r, net, opts);

    const BoundRecursion rec = bound_recursion(net);
    for (std::size_t l = 2; l <= last_constrained_layer(net, opts); ++l) {
        const std::string w = layer_label(l);
        if (!opts.basis_only_nonneg) {
            auto neg = negative_entry(net.layer(l).weights, opts.slack, w);
            r.clauses.push_back(neg ? fail(w + " >= 0", *neg) : pass(w + " >= 0"));
        }
        // the box feeding layer l is the image of layer l-1
        const Vector du = rec.delta(l - 1);
        add_split_clause(r, net, l, w + " split: V >= 0, U*du_rest <= 0", opts,
                         [&](const ColumnSplit& s) -> std::optional<std::string> {
                             if (opts.basis_only_nonneg) {
                                 if (auto neg = negative_entry(s.w1, opts.slack, "W1")) return neg;
                             }
                             if (auto neg = inverse_nonneg(s, opts.slack)) return neg;
                             Vector du_rest;
                             for (std::size_t c : s.rest_cols) du_rest.push_back(du[c]);
                             const Vector ud = s.u * du_rest;
                             return positive_entry(ud, opts.slack, "U*du_rest");
                         });
    }
    finish(r);
    return r;
}

CertificateReport certify_relu_deep(const Network& net, const CertifyOptions& opts) {
    const TheoremId id = TheoremId::ReluDeep;
    if (net.depth() < 2) return inapplicable(id, "network has no hidden layer");
    if (auto bad = hidden_activation_outside(
            net, [](const Activation& a) { return a.kind() == Activation::Kind::Relu; }, "relu")) {
        return inapplicable(id, *bad);
    }
    CertificateReport r;
    r.theorem = id;
    r.clauses.push_back(pass("activation class"));
    add_common_clauses(r, net, opts);
    for (std::size_t l = 1; l < net.depth(); ++l) {
        const Vector& b = net.layer(l).bias;
        add_split_clause(r, net, l, layer_label(l) + " split: V >= 0, V*b <= 0", opts,
                         [&](const ColumnSplit& s) -> std::optional<std::string> {
                             if (auto neg = inverse_nonneg(s, opts.slack)) return neg;
                             return positive_entry(s.v * b, opts.slack, "V*b");
                         });
    }
    finish(r);
    return r;
}

CertificateReport certify_relu_one_layer(const Network& net, const CertifyOptions& opts) {
    const TheoremId id = TheoremId::ReluOneLayer;
    if (net.depth() != 2) {
        return inapplicable(id, "network has " + std::to_string(net.hidden_count()) +
                                    " hidden layers; theorem requires exactly one");
    }
    if (net.layer(1).activation->kind() != Activation::Kind::Relu) {
        return inapplicable(id, "layer 1 uses " + net.layer(1).activation->to_string() + "; theorem requires relu");
    }
    CertificateReport r;
    r.theorem = id;
    r.clauses.push_back(pass("activation class"));
    const std::size_t d = net.input_dim();
    const std::size_t n1 = net.layer(1).out_dim();
    r.clauses.push_back(d >= n1 ? pass("d >= n1")
                                : fail("d >= n1", "d=" + std::to_string(d) + " < n1=" + std::to_string(n1)));
    const std::size_t rk = rank(net.layer(1).weights, opts.rank_tol);
    r.clauses.push_back(rk == n1 ? pass("rank W1 = n1")
                                 : fail("rank W1 = n1", "rank " + std::to_string(rk) + " != n1=" +
                                                            std::to_string(n1)));
    finish(r);
    return r;
}

CertificateReport certify(TheoremId id, const Network& net, const CertifyOptions& opts) {
    switch (id) {
        case TheoremId::SurjectiveBijective: return certify_surjective_bijective(net, opts);
        case TheoremId::HalfBounded: return certify_half_bounded(net, opts);
        case TheoremId::Bounded: return certify_bounded(net, opts);
        case TheoremId::ReluDeep: return certify_relu_deep(net, opts);
        case TheoremId::ReluOneLayer: return certify_relu_one_layer(net, opts);
    }
    throw InvalidInput("certify: unknown theorem id");
}

std::vector<CertificateReport> certify_all(const Network& net, const CertifyOptions& opts) {
    std::vector<CertificateReport> out;
    out.reserve(kAllTheorems.size());
    for (TheoremId id : kAllTheorems) out.push_back(certify(id, net, opts));
    return out;
}

bool any_certified(const std::vector<CertificateReport>& reports) noexcept {
    for (const auto& r : reports)
        if (r.verdict == Verdict::Certified) return true;
    return false;
}

}  // namespace regioncert
