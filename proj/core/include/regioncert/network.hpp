#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "regioncert/activation.hpp"
#include "regioncert/linalg.hpp"

namespace regioncert {

/// One affine layer followed by an optional element-wise activation.
/// The output layer carries no activation.
struct Layer {
    Matrix weights;  // n_k x n_{k-1}
    Vector bias;     // n_k
    std::optional<Activation> activation;

    std::size_t out_dim() const noexcept { return weights.rows(); }
    std::size_t in_dim() const noexcept { return weights.cols(); }

    friend bool operator==(const Layer&, const Layer&) = default;
};

/// Feedforward classifier: L >= 1 layers, hidden layers 1..L-1 activated,
/// output layer L affine. Immutable after construction.
class Network {
public:
    /// Validates shapes, finiteness, and that exactly the output layer
    /// lacks an activation. Throws InvalidInput.
    Network(std::size_t input_dim, std::vector<Layer> layers);

    std::size_t input_dim() const noexcept { return input_dim_; }
    std::size_t class_count() const noexcept { return layers_.back().out_dim(); }
    /// L, the number of affine layers (hidden + output).
    std::size_t depth() const noexcept { return layers_.size(); }
    std::size_t hidden_count() const noexcept { return layers_.size() - 1; }

    /// Layer l in 1-based numbering (1..L).
    const Layer& layer(std::size_t l) const { return layers_.at(l - 1); }
    const std::vector<Layer>& layers() const noexcept { return layers_; }

    /// Widths n_0..n_L.
    std::vector<std::size_t> widths() const;
    std::size_t max_width() const noexcept;

    friend bool operator==(const Network&, const Network&) = default;

private:
    std::size_t input_dim_;
    std::vector<Layer> layers_;
};

/// f_k(x) for 0 <= k <= L.
Vector feature_map(const Network& net, std::span<const double> x, std::size_t k);

/// f_L(x).
Vector forward(const Network& net, std::span<const double> x);

/// Allocation-free forward pass for hot loops. Owns two scratch buffers
/// sized to the widest layer; not thread-safe, make one per worker.
class ForwardEvaluator {
public:
    explicit ForwardEvaluator(const Network& net);

    /// Writes f_L(x) into out (size M).
    void operator()(std::span<const double> x, std::span<double> out);

private:
    const Network* net_;
    Vector a_;
    Vector b_;
};

/// Strict argmax of output vector o: m iff o_m - o_j > tie_eps for all j != m.
std::optional<std::size_t> strict_argmax(std::span<const double> o, double tie_eps = 0.0) noexcept;

std::optional<std::size_t> classify(const Network& net, std::span<const double> x, double tie_eps = 0.0);

/// o in D_m = { o : o_m > o_j for all j != m }.
bool output_membership(std::span<const double> o, std::size_t m);

}  // namespace regioncert
