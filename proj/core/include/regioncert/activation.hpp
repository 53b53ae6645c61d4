#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace regioncert {

/// Element-wise activation of a hidden layer.
///
/// LeakyReLU carries a slope alpha in (0, 1); ELU carries alpha > 0 and
/// saturates at -alpha. The other kinds ignore alpha.
class Activation {
public:
    enum class Kind { Sigmoid, Tanh, Relu, LeakyRelu, Softplus, Elu };

    static Activation sigmoid() { return Activation(Kind::Sigmoid, 0.0); }
    static Activation tanh() { return Activation(Kind::Tanh, 0.0); }
    static Activation relu() { return Activation(Kind::Relu, 0.0); }
    static Activation leaky_relu(double alpha);
    static Activation softplus() { return Activation(Kind::Softplus, 0.0); }
    static Activation elu(double alpha = 1.0);

    /// Accepts "sigmoid", "tanh", "relu", "softplus", "leaky_relu[:alpha]",
    /// "elu[:alpha]". Default alphas are 0.1 (leaky_relu) and 1.0 (elu).
    static Activation parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }
    std::string_view name() const noexcept;
    bool has_alpha() const noexcept { return kind_ == Kind::LeakyRelu || kind_ == Kind::Elu; }
    /// name, plus ":alpha" for parameterised kinds
    std::string to_string() const;

    double apply(double t) const noexcept;
    /// Inverse on the range; nullopt for ReLU (not injective) or when y is
    /// outside the open range.
    std::optional<double> inverse(double y) const noexcept;

    friend bool operator==(const Activation&, const Activation&) = default;

private:
    Activation(Kind k, double a) : kind_(k), alpha_(a) {}
    Kind kind_;
    double alpha_;
};

/// Range metadata: lower_limit = lim_{t->-inf}, upper_limit = lim_{t->+inf}
/// (infinite values use +-infinity).
struct ActivationTraits {
    double lower_limit;
    double upper_limit;
    bool bijective_onto_range;
    bool surjective_onto_reals;

    bool lower_finite() const noexcept;
    bool upper_finite() const noexcept;
};

ActivationTraits traits(const Activation& a) noexcept;

}  // namespace regioncert
