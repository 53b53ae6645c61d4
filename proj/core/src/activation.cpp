#include "regioncert/activation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "regioncert/error.hpp"

namespace regioncert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_alpha(std::string_view text) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw InvalidInput("activation: cannot parse alpha '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Activation Activation::leaky_relu(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidInput("leaky_relu: alpha must lie in (0, 1)");
    }
    return Activation(Kind::LeakyRelu, alpha);
}

Activation Activation::elu(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInput("elu: alpha must be positive");
    return Activation(Kind::Elu, alpha);
}

Activation Activation::parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    std::optional<double> alpha;
    if (colon != std::string_view::npos) alpha = parse_alpha(text.substr(colon + 1));

    auto no_alpha = [&](Activation a) {
        if (alpha) throw InvalidInput("activation '" + std::string(head) + "' takes no parameter");
        return a;
    };
    if (head == "sigmoid") return no_alpha(sigmoid());
    if (head == "tanh") return no_alpha(tanh());
    if (head == "relu") return no_alpha(relu());
    if (head == "softplus") return no_alpha(softplus());
    if (head == "leaky_relu") return leaky_relu(alpha.value_or(0.1));
    if (head == "elu") return elu(alpha.value_or(1.0));
    throw InvalidInput("unknown activation '" + std::string(text) + "'");
}

std::string_view Activation::name() const noexcept {
    switch (kind_) {
        case Kind::Sigmoid: return "sigmoid";
        case Kind::Tanh: return "tanh";
        case Kind::Relu: return "relu";
        case Kind::LeakyRelu: return "leaky_relu";
        case Kind::Softplus: return "softplus";
        case Kind::Elu: return "elu";
    }
    return "?";
}

std::string Activation::to_string() const {
    std::ostringstream os;
    os << name();
    if (has_alpha()) {
        os.precision(17);
        os << ':' << alpha_;
    }
    return os.str();
}

double Activation::apply(double t) const noexcept {
    switch (kind_) {
        case Kind::Sigmoid:
            if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
            else {
                const double e = std::exp(t);
                return e / (1.0 + e);
            }
        case Kind::Tanh: return std::tanh(t);
        case Kind::Relu: return t > 0.0 ? t : 0.0;
        case Kind::LeakyRelu: return t >= 0.0 ? t : alpha_ * t;
        case Kind::Softplus:
            // log(1 + e^t) = max(t, 0) + log1p(e^-|t|)
            return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
        case Kind::Elu: return t >= 0.0 ? t : alpha_ * std::expm1(t);
    }
    return t;
}

std::optional<double> Activation::inverse(double y) const noexcept {
    switch (kind_) {
        case Kind::Sigmoid:
            if (!(y > 0.0 && y < 1.0)) return std::nullopt;
            return std::log(y) - std::log1p(-y);
        case Kind::Tanh:
            if (!(y > -1.0 && y < 1.0)) return std::nullopt;
            return std::atanh(y);
        case Kind::Relu: return std::nullopt;
        case Kind::LeakyRelu: return y >= 0.0 ? y : y / alpha_;
        case Kind::Softplus:
            if (!(y > 0.0)) return std::nullopt;
            // log(e^y - 1) = y + log(1 - e^-y)
            return y + std::log(-std::expm1(-y));
        case Kind::Elu:
            if (!(y > -alpha_)) return std::nullopt;
            return y >= 0.0 ? y : std::log1p(y / alpha_);
    }
    return std::nullopt;
}

bool ActivationTraits::lower_finite() const noexcept { return std::isfinite(lower_limit); }
bool ActivationTraits::upper_finite() const noexcept { return std::isfinite(upper_limit); }

ActivationTraits traits(const Activation& a) noexcept {
    switch (a.kind()) {
        case Activation::Kind::Sigmoid: return {0.0, 1.0, true, false};
        case Activation::Kind::Tanh: return {-1.0, 1.0, true, false};
        case Activation::Kind::Relu: return {0.0, kInf, false, false};
        case Activation::Kind::LeakyRelu: return {-kInf, kInf, true, true};
        case Activation::Kind::Softplus: return {0.0, kInf, true, false};
        case Activation::Kind::Elu: return {-a.alpha(), kInf, true, false};
    }
    return {-kInf, kInf, false, false};
}

}  // namespace regioncert
