#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace regioncert {

/// Portable seeded generator. Raw bits come from std::mt19937_64, whose
/// output sequence the C++ standard fixes; the distributions below are
/// written out by hand because the standard library ones are not.
///
///   uniform01()        = (bits >> 11) * 2^-53, in [0, 1)
///   uniform(lo, hi)    = lo + (hi - lo) * uniform01()
///   uniform_index(n)   = bits mod n, rejecting the biased top slice
///   shuffle            = Fisher-Yates from the back using uniform_index
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }
    double uniform01();
    double uniform(double lo, double hi);
    std::size_t uniform_index(std::size_t n);
    bool coin(double p_true = 0.5) { return uniform01() < p_true; }

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[uniform_index(i)]);
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finaliser of seed + golden-ratio * (stream + 1). Used to give
/// every fuzz trial its own independent seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace regioncert
