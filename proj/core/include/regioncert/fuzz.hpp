#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regioncert/certificates.hpp"
#include "regioncert/synthesis.hpp"

namespace regioncert {

struct FuzzOptions {
    std::size_t resolution = 256;  // cells per axis
    double box_scale = 4.0;        // scan box is [-box_scale * weight_scale, +]^d
    std::size_t threads = 0;
};

enum class TrialSource { Certified, Random, Counterexample };

std::string_view trial_source_name(TrialSource s) noexcept;

/// One sampled network and what the certificates and the grid said about it.
struct FuzzTrial {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    TrialSource source = TrialSource::Random;
    std::string description;  // e.g. "relu-deep 3,2,2 relu"
    std::vector<std::string> certified_by;
    std::vector<std::size_t> components;  // per class
    std::vector<bool> touches_boundary;   // per class
};

struct FuzzViolation {
    FuzzTrial trial;
    std::string network_json;
};

struct FuzzReport {
    std::size_t trials = 0;
    std::size_t certified = 0;  // trials with at least one Certified verdict
    std::size_t refuted = 0;    // trials with none
    std::vector<std::size_t> certified_by_theorem = std::vector<std::size_t>(kAllTheorems.size(), 0);
    std::size_t disconnected_uncertified = 0;  // informational: >= 2 components, no certificate
    std::vector<FuzzViolation> violations;
};

/// Network sampled for trial `index` of a campaign seeded with `seed`.
/// Trial seeds are mix_seed(seed, index), so any trial can be replayed on
/// its own.
struct SampledNet {
    TrialSource source;
    std::string description;
    double weight_scale;
    Network net;
};
SampledNet sample_trial_network(std::uint64_t seed, std::size_t index);

/// Samples `trials` networks (certified generators for every theorem,
/// unconstrained random nets, and counterexamples; input dimension <= 3,
/// widths <= 3,3,2,2), runs every checker and the grid oracle on each, and
/// records as a violation any certified network with a class of two or more
/// components. Deterministic in (trials, seed, resolution, box_scale).
FuzzReport fuzz_campaign(std::size_t trials, std::uint64_t seed, const FuzzOptions& opts = {});

std::string fuzz_report_to_json(const FuzzReport& report);
std::string fuzz_report_to_text(const FuzzReport& report);

}  // namespace regioncert
