#include "regioncert/synthesis.hpp"

#include <numeric>
#include <string>

#include "regioncert/error.hpp"

namespace regioncert {

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double scale) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(-scale, scale);
    return m;
}

Matrix random_full_rank(std::size_t rows, std::size_t cols, Rng& rng, double scale) {
    // uniform entries are rank deficient with probability zero; the loop
    // guards against pathological draws
    for (;;) {
        Matrix m = random_matrix(rows, cols, rng, scale);
        if (rank(m, 1e-6) == std::min(rows, cols)) return m;
    }
}

Vector random_vector(std::size_t n, Rng& rng, double lo, double hi) {
    Vector v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

enum class RestFill { Zero, NonNeg, Any };

// [monomial | rest] with the monomial block in the leading columns; when the
// rest is zero the columns are shuffled since any placement keeps the split.
Matrix monomial_block(std::size_t rows, std::size_t cols, RestFill fill, Rng& rng, double scale) {
    const Matrix mono = gen_monomial(rows, rng, scale);
    Matrix w(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < rows; ++c) w(r, c) = mono(r, c);
        for (std::size_t c = rows; c < cols; ++c) {
            switch (fill) {
                case RestFill::Zero: break;
                case RestFill::NonNeg: w(r, c) = rng.uniform(0.0, scale); break;
                case RestFill::Any: w(r, c) = rng.uniform(-scale, scale); break;
            }
        }
    }
    if (fill != RestFill::Zero) return w;
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<std::size_t>(order));
    return w.select_columns(order);
}

bool in_class(TheoremId id, const Activation& a) {
    const ActivationTraits t = traits(a);
    switch (id) {
        case TheoremId::SurjectiveBijective: return t.surjective_onto_reals;
        case TheoremId::HalfBounded: return t.bijective_onto_range && t.lower_finite() && !t.upper_finite();
        case TheoremId::Bounded: return t.bijective_onto_range && t.lower_finite() && t.upper_finite();
        case TheoremId::ReluDeep:
        case TheoremId::ReluOneLayer: return a.kind() == Activation::Kind::Relu;
    }
    return false;
}

void require_feasible(const SynthSpec& spec) {
    const auto& w = spec.widths;
    const std::string theorem(theorem_name(spec.target_theorem));
    if (w.size() < 2) throw InvalidInput("widths need at least an input and an output entry");
    for (std::size_t n : w)
        if (n == 0) throw InvalidInput("widths must be positive");
    if (!(spec.weight_scale > 0.0)) throw InvalidInput("weight scale must be positive");
    const std::size_t L = w.size() - 1;

    if (L == 1 && spec.target_theorem != TheoremId::SurjectiveBijective) {
        throw Infeasible(theorem + ": activation class: network has no hidden layer");
    }
    if (L > 1 && !in_class(spec.target_theorem, spec.activation)) {
        throw Infeasible(theorem + ": activation class: " + spec.activation.to_string() + " is not admissible");
    }
    if (spec.target_theorem == TheoremId::ReluOneLayer) {
        if (L != 2) throw Infeasible(theorem + ": activation class: requires exactly one hidden layer");
        if (w[0] < w[1]) {
            throw Infeasible(theorem + ": d >= n1: d=" + std::to_string(w[0]) + " < n1=" + std::to_string(w[1]));
        }
        return;
    }
    for (std::size_t k = 1; k < L; ++k) {
        if (w[k] > w[k - 1]) {
            throw Infeasible(theorem + ": pyramidal: n" + std::to_string(k - 1) + "=" + std::to_string(w[k - 1]) +
                             " < n" + std::to_string(k) + "=" + std::to_string(w[k]));
        }
    }
    if ((spec.target_theorem == TheoremId::HalfBounded || spec.target_theorem == TheoremId::Bounded) &&
        w[L] > w[L - 1]) {
        throw Infeasible(theorem + ": W" + std::to_string(L) + " split: " + std::to_string(w[L]) +
                         " outputs exceed the " + std::to_string(w[L - 1]) + " columns of the last layer");
    }
}

}  // namespace

Matrix gen_monomial(std::size_t n, Rng& rng, double scale) {
    if (n == 0) throw InvalidInput("gen_monomial: n must be >= 1");
    if (!(scale > 0.0)) throw InvalidInput("gen_monomial: scale must be positive");
    const double lo = scale > 0.5 ? 0.5 : scale / 2;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<std::size_t>(perm));
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, perm[i]) = rng.uniform(lo, scale);
    return m;
}

Matrix gen_monomial(std::size_t n, std::uint64_t seed, double scale) {
    Rng rng(seed);
    return gen_monomial(n, rng, scale);
}

Network gen_certified(const SynthSpec& spec) {
    require_feasible(spec);
    Rng rng(spec.seed);
    const auto& w = spec.widths;
    const std::size_t L = w.size() - 1;
    const double s = spec.weight_scale;

    std::vector<Layer> layers;
    for (std::size_t l = 1; l <= L; ++l) {
        Layer layer;
        const std::size_t rows = w[l];
        const std::size_t cols = w[l - 1];
        const bool output = l == L;
        switch (spec.target_theorem) {
            case TheoremId::SurjectiveBijective:
            case TheoremId::ReluOneLayer:
                layer.weights = output ? random_matrix(rows, cols, rng, s) : random_full_rank(rows, cols, rng, s);
                layer.bias = random_vector(rows, rng, -s, s);
                break;
            case TheoremId::HalfBounded:
            case TheoremId::Bounded: {
                if (l == 1) {
                    layer.weights = random_full_rank(rows, cols, rng, s);
                } else {
                    const bool rest = spec.nonzero_rest && spec.target_theorem == TheoremId::HalfBounded;
                    layer.weights = monomial_block(rows, cols, rest ? RestFill::NonNeg : RestFill::Zero, rng, s);
                }
                layer.bias = random_vector(rows, rng, -s, s);
                break;
            }
            case TheoremId::ReluDeep:
                if (output) {
                    layer.weights = random_matrix(rows, cols, rng, s);
                    layer.bias = random_vector(rows, rng, -s, s);
                } else {
                    layer.weights = monomial_block(rows, cols, spec.nonzero_rest ? RestFill::Any : RestFill::Zero,
                                                   rng, s);
                    layer.bias = random_vector(rows, rng, -s, 0.0);
                }
                break;
        }
        if (!output) layer.activation = spec.activation;
        layers.push_back(std::move(layer));
    }
    return Network(w[0], std::move(layers));
}

Network gen_random(const std::vector<std::size_t>& widths, const Activation& act, Rng& rng, double scale) {
    if (widths.size() < 2) throw InvalidInput("widths need at least an input and an output entry");
    std::vector<Layer> layers;
    for (std::size_t l = 1; l < widths.size(); ++l) {
        Layer layer;
        layer.weights = random_matrix(widths[l], widths[l - 1], rng, scale);
        layer.bias = random_vector(widths[l], rng, -scale, scale);
        if (l + 1 < widths.size()) layer.activation = act;
        layers.push_back(std::move(layer));
    }
    return Network(widths[0], std::move(layers));
}

std::string_view counterexample_name(CounterexampleKind kind) noexcept {
    switch (kind) {
        case CounterexampleKind::ReluAbsolute: return "relu-absolute";
        case CounterexampleKind::WideXor: return "wide-xor";
    }
    return "?";
}

std::optional<CounterexampleKind> parse_counterexample(std::string_view name) noexcept {
    if (name == "relu-absolute") return CounterexampleKind::ReluAbsolute;
    if (name == "wide-xor") return CounterexampleKind::WideXor;
    return std::nullopt;
}

Network gen_counterexample(CounterexampleKind kind) {
    std::vector<Layer> layers;
    switch (kind) {
        case CounterexampleKind::ReluAbsolute:
            layers.push_back({Matrix{{1.0}, {-1.0}}, {-1.0, -1.0}, Activation::relu()});
            layers.push_back({Matrix{{0.0, 0.0}, {1.0, 1.0}}, {0.5, 0.0}, std::nullopt});
            return Network(1, std::move(layers));
        case CounterexampleKind::WideXor:
            layers.push_back({Matrix{{1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}, {-1.0, 1.0}},
                              {0.0, 0.0, 0.0, 0.0},
                              Activation::relu()});
            layers.push_back({Matrix{{0.0, 0.0, 1.0, 1.0}, {1.0, 1.0, 0.0, 0.0}}, {0.0, 0.0}, std::nullopt});
            return Network(2, std::move(layers));
    }
    throw InvalidInput("unknown counterexample kind");
}

}  // namespace regioncert
