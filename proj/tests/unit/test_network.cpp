#include <cmath>
#include <limits>

#include "doctest.h"
#include "regioncert/activation.hpp"
#include "regioncert/error.hpp"
#include "regioncert/network.hpp"
#include "regioncert/network_io.hpp"
#include "regioncert/synthesis.hpp"
#include "test_util.hpp"

using namespace regioncert;

namespace {

const Activation kBijective[] = {Activation::sigmoid(), Activation::tanh(), Activation::leaky_relu(0.1),
                                 Activation::leaky_relu(0.7), Activation::softplus(), Activation::elu(1.0),
                                 Activation::elu(0.3)};

Network identity_net(const Activation& a, std::size_t width) {
    std::vector<Layer> layers;
    layers.push_back({Matrix::identity(width), Vector(width, 0.0), a});
    layers.push_back({Matrix::identity(width), Vector(width, 0.0), std::nullopt});
    return Network(width, std::move(layers));
}

}  // namespace

TEST_CASE("activation values") {
    CHECK(Activation::sigmoid().apply(0.0) == 0.5);
    CHECK(Activation::relu().apply(-3.0) == 0.0);
    CHECK(Activation::elu(1.0).apply(0.0) == 0.0);
    CHECK(Activation::leaky_relu(0.1).apply(-2.0) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(Activation::tanh().apply(1.0) == doctest::Approx(std::tanh(1.0)));
    CHECK(Activation::softplus().apply(0.0) == doctest::Approx(std::log(2.0)));
    // no overflow at the extremes
    CHECK(Activation::softplus().apply(1000.0) == 1000.0);
    CHECK(Activation::softplus().apply(-1000.0) == 0.0);
    CHECK(Activation::sigmoid().apply(-1000.0) == 0.0);
    CHECK(Activation::sigmoid().apply(1000.0) == 1.0);
}

TEST_CASE("activation parameters are validated") {
    CHECK_THROWS_AS(Activation::leaky_relu(0.0), InvalidInput);
    CHECK_THROWS_AS(Activation::leaky_relu(1.0), InvalidInput);
    CHECK_THROWS_AS(Activation::elu(0.0), InvalidInput);
    CHECK(Activation::parse("leaky_relu") == Activation::leaky_relu(0.1));
    CHECK(Activation::parse("elu:2.5") == Activation::elu(2.5));
    CHECK(Activation::parse("tanh") == Activation::tanh());
    CHECK_THROWS_AS(Activation::parse("relu:0.5"), InvalidInput);
    CHECK_THROWS_AS(Activation::parse("swish"), InvalidInput);
    CHECK_THROWS_AS(Activation::parse("elu:abc"), InvalidInput);
    CHECK(Activation::leaky_relu(0.25).to_string() == "leaky_relu:0.25");
}

TEST_CASE("activation traits") {
    const auto s = traits(Activation::sigmoid());
    CHECK(s.lower_limit == 0.0);
    CHECK(s.upper_limit == 1.0);
    const auto t = traits(Activation::tanh());
    CHECK(t.lower_limit == -1.0);
    CHECK(t.upper_limit == 1.0);
    const auto r = traits(Activation::relu());
    CHECK(r.lower_limit == 0.0);
    CHECK_FALSE(r.upper_finite());
    CHECK_FALSE(r.bijective_onto_range);
    const auto l = traits(Activation::leaky_relu(0.1));
    CHECK_FALSE(l.lower_finite());
    CHECK(l.surjective_onto_reals);
    CHECK(traits(Activation::softplus()).lower_limit == 0.0);
    CHECK(traits(Activation::elu(2.0)).lower_limit == -2.0);
    for (const auto& a : kBijective) {
        CHECK(traits(a).bijective_onto_range);
        CHECK(traits(a).surjective_onto_reals == (a.kind() == Activation::Kind::LeakyRelu));
    }
}

TEST_CASE("activation limits and monotonicity match the traits") {
    Rng rng(21);
    std::vector<Activation> all(std::begin(kBijective), std::end(kBijective));
    all.push_back(Activation::relu());
    for (const auto& a : all) {
        const auto t = traits(a);
        if (t.lower_finite()) CHECK(std::abs(a.apply(-40.0) - t.lower_limit) <= 1e-6);
        if (t.upper_finite()) CHECK(std::abs(a.apply(40.0) - t.upper_limit) <= 1e-6);
        const bool strict = t.bijective_onto_range;
        for (int i = 0; i < 2000; ++i) {
            double t1 = rng.uniform(-10.0, 10.0), t2 = rng.uniform(-10.0, 10.0);
            if (t1 == t2) continue;
            if (t1 > t2) std::swap(t1, t2);
            INFO(a.to_string() << " t1=" << t1 << " t2=" << t2);
            if (strict) {
                CHECK(a.apply(t1) < a.apply(t2));
            } else {
                CHECK(a.apply(t1) <= a.apply(t2));
            }
        }
    }
}

TEST_CASE("activation inverses recover their argument") {
    Rng rng(22);
    for (const auto& a : kBijective) {
        double worst = 0.0;
        for (int i = 0; i < 5000; ++i) {
            // beyond |t| ~ 8 tanh is within 1e-7 of its limit and one ulp of
            // output costs more than 1e-9 of input
            const double t = rng.uniform(-8.0, 8.0);
            const auto back = a.inverse(a.apply(t));
            REQUIRE(back.has_value());
            worst = std::max(worst, std::abs(*back - t) / std::max(1.0, std::abs(t)));
        }
        INFO(a.to_string());
        CHECK(worst <= 1e-9);
    }
    CHECK_FALSE(Activation::relu().inverse(1.0).has_value());
    CHECK_FALSE(Activation::sigmoid().inverse(1.0).has_value());
    CHECK_FALSE(Activation::elu(1.0).inverse(-1.0).has_value());
}

TEST_CASE("network validation") {
    auto hidden = [] { return Layer{Matrix::identity(2), {0, 0}, Activation::relu()}; };
    auto output = [] { return Layer{Matrix::identity(2), {0, 0}, std::nullopt}; };
    CHECK_NOTHROW(Network(2, {hidden(), output()}));
    CHECK_THROWS_AS(Network(3, {hidden(), output()}), InvalidInput);
    CHECK_THROWS_AS(Network(2, {}), InvalidInput);
    CHECK_THROWS_AS(Network(2, {hidden(), hidden()}), InvalidInput);
    CHECK_THROWS_AS(Network(2, {output(), output()}), InvalidInput);
    CHECK_THROWS_AS(Network(2, {Layer{Matrix::identity(2), {0}, std::nullopt}}), InvalidInput);

    const Network net(2, {hidden(), Layer{Matrix{{1, 1}, {1, -1}, {0, 1}}, {0, 0, 0}, std::nullopt}});
    CHECK(net.depth() == 2);
    CHECK(net.hidden_count() == 1);
    CHECK(net.class_count() == 3);
    CHECK(net.widths() == std::vector<std::size_t>{2, 2, 3});
    CHECK(net.max_width() == 3);
}

TEST_CASE("feature maps") {
    const Network relu_net = identity_net(Activation::relu(), 2);
    const Vector x{-1, 2};
    CHECK(feature_map(relu_net, x, 0) == x);
    CHECK(feature_map(relu_net, x, 1) == Vector{0, 2});
    CHECK(forward(relu_net, x) == Vector{0, 2});
    CHECK_THROWS_AS(feature_map(relu_net, x, 3), InvalidInput);
    CHECK_THROWS_AS(forward(relu_net, Vector{1}), InvalidInput);

    const Network sig = identity_net(Activation::sigmoid(), 2);
    CHECK(forward(sig, Vector{0, 0}) == Vector{0.5, 0.5});
}

TEST_CASE("strict argmax and output membership") {
    CHECK(strict_argmax(Vector{3, 1, 2}) == 0u);
    CHECK_FALSE(strict_argmax(Vector{2, 2}).has_value());
    CHECK_FALSE(strict_argmax(Vector{1, 1 + 1e-13}, 1e-12).has_value());
    CHECK(strict_argmax(Vector{1, 1 + 1e-11}, 1e-12) == 1u);
    CHECK(output_membership(Vector{5, 0, 0}, 0));
    CHECK_FALSE(output_membership(Vector{0, 0}, 0));
    CHECK(output_membership(Vector{1, 2, 3}, 2));
    CHECK_THROWS_AS(output_membership(Vector{1, 2}, 2), InvalidInput);
}

TEST_CASE("classify agrees with output membership and the fast evaluator") {
    Rng rng(23);
    const Activation acts[] = {Activation::relu(), Activation::tanh(), Activation::softplus(),
                               Activation::leaky_relu(0.2)};
    for (int n = 0; n < 20; ++n) {
        const std::size_t d = 1 + rng.uniform_index(4);
        std::vector<std::size_t> widths{d};
        const std::size_t hidden = rng.uniform_index(3);
        for (std::size_t h = 0; h < hidden; ++h) widths.push_back(1 + rng.uniform_index(5));
        widths.push_back(2 + rng.uniform_index(3));
        const Network net = gen_random(widths, acts[rng.uniform_index(4)], rng, 1.5);
        ForwardEvaluator eval(net);
        Vector fast(net.class_count());
        for (int i = 0; i < 10000; ++i) {
            const Vector x = testutil::random_vector(rng, d, -3.0, 3.0);
            const Vector o = forward(net, x);
            eval(x, fast);
            REQUIRE(fast == o);  // bit-identical
            const auto c = classify(net, x);
            for (std::size_t m = 0; m < net.class_count(); ++m) REQUIRE((c == m) == output_membership(o, m));
        }
    }
}

TEST_CASE("network file round trip") {
    Rng rng(24);
    for (int i = 0; i < 50; ++i) {
        const Network net = gen_random({3, 4, 2, 3}, Activation::elu(rng.uniform(0.1, 3.0)), rng, 2.0);
        const std::string text = serialize_network(net);
        CHECK(parse_network(text) == net);
        CHECK(serialize_network(parse_network(text)) == text);
    }
}

TEST_CASE("network file diagnostics") {
    const std::string good = R"({"input_dim": 1, "classes": 2, "layers": [
        {"rows": 2, "cols": 1, "weights": [1, -1], "bias": [0, 0], "activation": "relu"},
        {"rows": 2, "cols": 2, "weights": [1, 0, 0, 1], "bias": [0, 0], "activation": null}]})";
    CHECK(parse_network(good).class_count() == 2);

    auto message = [](const std::string& text) -> std::string {
        try {
            parse_network(text);
        } catch (const InvalidInput& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message(good.substr(0, good.size() / 2)).find("line") != std::string::npos);
    std::string bad_count = good;
    bad_count.replace(bad_count.find("[1, -1]"), 7, "[1]");
    CHECK(message(bad_count).find("layers[0].weights") != std::string::npos);
    std::string bad_act = good;
    bad_act.replace(bad_act.find("\"relu\""), 6, "\"gelu\"");
    CHECK(message(bad_act).find("layers[0].activation") != std::string::npos);
    std::string bad_classes = good;
    bad_classes.replace(bad_classes.find("\"classes\": 2"), 12, "\"classes\": 3");
    CHECK_FALSE(message(bad_classes).empty());
    std::string leaky_no_alpha = good;
    leaky_no_alpha.replace(leaky_no_alpha.find("\"relu\""), 6, R"({"name": "leaky_relu"})");
    CHECK(message(leaky_no_alpha).find("alpha") != std::string::npos);
}
