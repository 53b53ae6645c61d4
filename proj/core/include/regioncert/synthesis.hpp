#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "regioncert/certificates.hpp"
#include "regioncert/linalg.hpp"
#include "regioncert/network.hpp"
#include "regioncert/random.hpp"

namespace regioncert {

struct SynthSpec {
    std::vector<std::size_t> widths;  // n_0 .. n_L, so L = widths.size() - 1
    Activation activation = Activation::leaky_relu(0.1);
    TheoremId target_theorem = TheoremId::SurjectiveBijective;
    std::uint64_t seed = 0;
    double weight_scale = 1.0;
    /// Fill the non-basis columns of constrained layers with random valid
    /// values instead of zeros (half-bounded and relu-deep targets only;
    /// the bounded target keeps them zero, see gen_certified).
    bool nonzero_rest = false;
};

/// D * P with diag(D) drawn from U(0.5, scale) (U(scale/2, scale) when
/// scale <= 0.5) and P a uniformly random permutation.
Matrix gen_monomial(std::size_t n, std::uint64_t seed, double scale = 1.0);
Matrix gen_monomial(std::size_t n, Rng& rng, double scale = 1.0);

/// A network that the checker for spec.target_theorem certifies under
/// default CertifyOptions. Throws Infeasible, naming the failed clause,
/// when the widths or activation cannot satisfy that theorem.
///
///   surjective-bijective  random full-rank weights
///   half-bounded, bounded W_1 random full rank; W_l (l >= 2) a monomial
///                         block plus zero (or, for half-bounded with
///                         nonzero_rest, non-negative) remaining columns
///   relu-deep             W_l a monomial block plus remaining columns,
///                         b_l <= 0, output layer random
///   relu-one-layer        random full-rank W_1
Network gen_certified(const SynthSpec& spec);

/// Network with every entry drawn from U(-scale, scale); no structure.
Network gen_random(const std::vector<std::size_t>& widths, const Activation& act, Rng& rng, double scale = 1.0);

enum class CounterexampleKind { ReluAbsolute, WideXor };

std::string_view counterexample_name(CounterexampleKind kind) noexcept;
std::optional<CounterexampleKind> parse_counterexample(std::string_view name) noexcept;

/// Hand-built ReLU networks with a disconnected decision region.
///
///   relu-absolute  d = 1, h = (relu(x - 1), relu(-x - 1)),
///                  o_0 = 0.5, o_1 = h_1 + h_2, so class 1 is |x| > 1.5
///   wide-xor       d = 2, o_1 = |x_1 + x_2|, o_0 = |x_1 - x_2| through four
///                  relu units, so each class is a pair of opposite quadrants
Network gen_counterexample(CounterexampleKind kind);

}  // namespace regioncert
