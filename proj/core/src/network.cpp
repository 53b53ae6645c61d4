#include "regioncert/network.hpp"

#include <algorithm>
#include <string>

#include "regioncert/error.hpp"

namespace regioncert {

Network::Network(std::size_t input_dim, std::vector<Layer> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
    if (input_dim_ == 0) throw InvalidInput("network: input_dim must be positive");
    if (layers_.empty()) throw InvalidInput("network: at least one layer is required");
    std::size_t prev = input_dim_;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const Layer& layer = layers_[i];
        const std::string where = "network: layer " + std::to_string(i + 1);
        if (layer.weights.rows() == 0) throw InvalidInput(where + " has zero width");
        if (layer.weights.cols() != prev) {
            throw InvalidInput(where + " expects " + std::to_string(layer.weights.cols()) +
                               " inputs but previous width is " + std::to_string(prev));
        }
        if (layer.bias.size() != layer.weights.rows()) throw InvalidInput(where + " bias length mismatch");
        if (!all_finite(layer.weights.entries()) || !all_finite(layer.bias)) {
            throw InvalidInput(where + " has non-finite parameters");
        }
        const bool is_output = i + 1 == layers_.size();
        if (is_output && layer.activation) throw InvalidInput(where + ": output layer must not have an activation");
        if (!is_output && !layer.activation) throw InvalidInput(where + ": hidden layer needs an activation");
        prev = layer.weights.rows();
    }
}

std::vector<std::size_t> Network::widths() const {
    std::vector<std::size_t> w{input_dim_};
    for (const auto& l : layers_) w.push_back(l.out_dim());
    return w;
}

std::size_t Network::max_width() const noexcept {
    std::size_t w = input_dim_;
    for (const auto& l : layers_) w = std::max(w, l.out_dim());
    return w;
}

Vector feature_map(const Network& net, std::span<const double> x, std::size_t k) {
    if (x.size() != net.input_dim()) {
        throw InvalidInput("feature_map: input has dimension " + std::to_string(x.size()) + ", expected " +
                           std::to_string(net.input_dim()));
    }
    if (k > net.depth()) throw InvalidInput("feature_map: layer index out of range");
    Vector f(x.begin(), x.end());
    for (std::size_t l = 1; l <= k; ++l) {
        const Layer& layer = net.layer(l);
        Vector z = layer.weights * f;
        for (std::size_t i = 0; i < z.size(); ++i) {
            z[i] += layer.bias[i];
            if (layer.activation) z[i] = layer.activation->apply(z[i]);
        }
        f = std::move(z);
    }
    return f;
}

Vector forward(const Network& net, std::span<const double> x) { return feature_map(net, x, net.depth()); }

ForwardEvaluator::ForwardEvaluator(const Network& net)
    : net_(&net), a_(net.max_width()), b_(net.max_width()) {}

void ForwardEvaluator::operator()(std::span<const double> x, std::span<double> out) {
    std::copy(x.begin(), x.end(), a_.begin());
    std::size_t width = x.size();
    for (const Layer& layer : net_->layers()) {
        const std::size_t rows = layer.weights.rows();
        const double* w = layer.weights.entries().data();
        for (std::size_t i = 0; i < rows; ++i) {
            // same summation order as feature_map, so results are bit-identical
            double s = 0.0;
            for (std::size_t j = 0; j < width; ++j) s += w[i * width + j] * a_[j];
            s += layer.bias[i];
            b_[i] = layer.activation ? layer.activation->apply(s) : s;
        }
        std::swap(a_, b_);
        width = rows;
    }
    std::copy(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(width), out.begin());
}

std::optional<std::size_t> strict_argmax(std::span<const double> o, double tie_eps) noexcept {
    if (o.empty()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t j = 1; j < o.size(); ++j) {
        if (o[j] > o[best]) best = j;
    }
    for (std::size_t j = 0; j < o.size(); ++j) {
        if (j != best && !(o[best] - o[j] > tie_eps)) return std::nullopt;
    }
    return best;
}

std::optional<std::size_t> classify(const Network& net, std::span<const double> x, double tie_eps) {
    return strict_argmax(forward(net, x), tie_eps);
}

bool output_membership(std::span<const double> o, std::size_t m) {
    if (m >= o.size()) throw InvalidInput("output_membership: class index out of range");
    for (std::size_t j = 0; j < o.size(); ++j) {
        if (j != m && !(o[m] > o[j])) return false;
    }
    return true;
}

}  // namespace regioncert
