#include "regioncert/fuzz.hpp"

#include <sstream>

#include "json.hpp"
#include "regioncert/grid.hpp"
#include "regioncert/network_io.hpp"

namespace regioncert {

namespace {

// Width caps per position: n_0 <= 3, n_1 <= 3, n_2 <= 2, n_3 <= 2.
constexpr std::size_t kWidthCap[] = {3, 3, 2, 2};
constexpr std::size_t kClasses = 2;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.uniform_index(hi - lo + 1); }

std::string widths_text(const std::vector<std::size_t>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s;
}

Activation pick_activation(TheoremId id, Rng& rng) {
    switch (id) {
        case TheoremId::SurjectiveBijective: return Activation::leaky_relu(rng.uniform(0.05, 0.5));
        case TheoremId::HalfBounded: return rng.coin() ? Activation::softplus() : Activation::elu(rng.uniform(0.5, 2.0));
        case TheoremId::Bounded: return rng.coin() ? Activation::sigmoid() : Activation::tanh();
        case TheoremId::ReluDeep:
        case TheoremId::ReluOneLayer: return Activation::relu();
    }
    return Activation::relu();
}

Activation any_activation(Rng& rng) {
    switch (rng.uniform_index(6)) {
        case 0: return Activation::sigmoid();
        case 1: return Activation::tanh();
        case 2: return Activation::relu();
        case 3: return Activation::leaky_relu(rng.uniform(0.05, 0.5));
        case 4: return Activation::softplus();
        default: return Activation::elu(rng.uniform(0.5, 2.0));
    }
}

// Pyramidal widths n_0 >= ... >= n_{L-1} >= min_hidden within the caps,
// output width kClasses.
std::vector<std::size_t> pyramid(Rng& rng, std::size_t depth, std::size_t min_hidden) {
    std::vector<std::size_t> w{pick(rng, std::max<std::size_t>(1, min_hidden), kWidthCap[0])};
    for (std::size_t k = 1; k < depth; ++k) w.push_back(pick(rng, min_hidden, std::min(w.back(), kWidthCap[k])));
    w.push_back(kClasses);
    return w;
}

SampledNet sample_certified(Rng& rng) {
    const TheoremId id = kAllTheorems[rng.uniform_index(kAllTheorems.size())];
    SynthSpec spec;
    spec.target_theorem = id;
    spec.activation = pick_activation(id, rng);
    spec.weight_scale = rng.uniform(0.5, 2.0);
    spec.nonzero_rest = rng.coin();
    switch (id) {
        case TheoremId::SurjectiveBijective: spec.widths = pyramid(rng, pick(rng, 1, 3), 1); break;
        case TheoremId::HalfBounded:
        case TheoremId::Bounded: spec.widths = pyramid(rng, pick(rng, 2, 3), kClasses); break;
        case TheoremId::ReluDeep: spec.widths = pyramid(rng, pick(rng, 2, 3), 1); break;
        case TheoremId::ReluOneLayer: spec.widths = pyramid(rng, 2, 1); break;
    }
    spec.seed = rng.bits();
    std::string desc = std::string(theorem_name(id)) + " " + widths_text(spec.widths) + " " +
                       spec.activation.to_string() + (spec.nonzero_rest ? " rest" : "");
    return {TrialSource::Certified, std::move(desc), spec.weight_scale, gen_certified(spec)};
}

SampledNet sample_random(Rng& rng) {
    const std::size_t depth = pick(rng, 1, 3);
    std::vector<std::size_t> w;
    for (std::size_t k = 0; k < depth; ++k) w.push_back(pick(rng, 1, kWidthCap[k]));
    w.push_back(kClasses);
    const Activation act = any_activation(rng);
    const double scale = rng.uniform(0.5, 2.0);
    std::string desc = "random " + widths_text(w) + " " + act.to_string();
    return {TrialSource::Random, std::move(desc), scale, gen_random(w, act, rng, scale)};
}

SampledNet sample_counterexample(Rng& rng) {
    const auto kind = rng.coin() ? CounterexampleKind::ReluAbsolute : CounterexampleKind::WideXor;
    // the counterexamples have unit weights; a window of +-4 shows both pieces
    return {TrialSource::Counterexample, std::string(counterexample_name(kind)), 1.0, gen_counterexample(kind)};
}

}  // namespace

std::string_view trial_source_name(TrialSource s) noexcept {
    switch (s) {
        case TrialSource::Certified: return "certified";
        case TrialSource::Random: return "random";
        case TrialSource::Counterexample: return "counterexample";
    }
    return "?";
}

SampledNet sample_trial_network(std::uint64_t seed, std::size_t index) {
    Rng rng(mix_seed(seed, index));
    const double u = rng.uniform01();
    if (u < 0.6) return sample_certified(rng);
    if (u < 0.9) return sample_random(rng);
    return sample_counterexample(rng);
}

FuzzReport fuzz_campaign(std::size_t trials, std::uint64_t seed, const FuzzOptions& opts) {
    FuzzReport report;
    report.trials = trials;
    ScanOptions scan;
    scan.threads = opts.threads;
    for (std::size_t t = 0; t < trials; ++t) {
        SampledNet sample = sample_trial_network(seed, t);
        FuzzTrial trial;
        trial.index = t;
        trial.seed = mix_seed(seed, t);
        trial.source = sample.source;
        trial.description = std::move(sample.description);

        const auto reports = certify_all(sample.net);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (reports[i].verdict == Verdict::Certified) {
                trial.certified_by.emplace_back(theorem_name(reports[i].theorem));
                ++report.certified_by_theorem[i];
            }
        }

        const double half = opts.box_scale * sample.weight_scale;
        const GridSpec spec = GridSpec::cube(sample.net.input_dim(), -half, half, opts.resolution);
        const RegionMap map = grid_scan(sample.net, spec, scan);
        bool disconnected = false;
        for (const auto& s : summarize(map)) {
            trial.components.push_back(s.components);
            trial.touches_boundary.push_back(s.touches_boundary);
            if (s.components >= 2) disconnected = true;
        }

        if (trial.certified_by.empty()) {
            ++report.refuted;
            if (disconnected) ++report.disconnected_uncertified;
        } else {
            ++report.certified;
            if (disconnected) report.violations.push_back({trial, serialize_network(sample.net)});
        }
    }
    return report;
}

std::string fuzz_report_to_json(const FuzzReport& report) {
    using nlohmann::json;
    json by_theorem = json::object();
    for (std::size_t i = 0; i < kAllTheorems.size(); ++i)
        by_theorem[std::string(theorem_name(kAllTheorems[i]))] = report.certified_by_theorem[i];
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"trial", v.trial.index},
                              {"seed", v.trial.seed},
                              {"source", std::string(trial_source_name(v.trial.source))},
                              {"description", v.trial.description},
                              {"certified_by", v.trial.certified_by},
                              {"components", v.trial.components},
                              {"touches_boundary", v.trial.touches_boundary},
                              {"network", json::parse(v.network_json)}});
    }
    json doc = {{"trials", report.trials},
                {"certified", report.certified},
                {"refuted", report.refuted},
                {"certified_by_theorem", by_theorem},
                {"disconnected_uncertified", report.disconnected_uncertified},
                {"violations", violations}};
    return doc.dump(2) + "\n";
}

std::string fuzz_report_to_text(const FuzzReport& report) {
    std::ostringstream os;
    os << "trials: " << report.trials << "\n"
       << "certified: " << report.certified << "\n"
       << "refuted: " << report.refuted << "\n";
    for (std::size_t i = 0; i < kAllTheorems.size(); ++i)
        os << "  " << theorem_name(kAllTheorems[i]) << ": " << report.certified_by_theorem[i] << "\n";
    os << "disconnected without certificate: " << report.disconnected_uncertified << "\n"
       << "violations: " << report.violations.size() << "\n";
    for (const auto& v : report.violations) {
        os << "  trial " << v.trial.index << " (" << v.trial.description << ") components";
        for (std::size_t c : v.trial.components) os << ' ' << c;
        os << "\n";
    }
    return os.str();
}

}  // namespace regioncert
