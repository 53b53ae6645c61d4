#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace regioncert {

enum class LemmaKind { RectHalfOpen, RectBounded, ReluPreimage, ReluSegment };

std::string_view lemma_name(LemmaKind kind) noexcept;
std::optional<LemmaKind> parse_lemma(std::string_view name) noexcept;

struct LemmaReport {
    LemmaKind kind{};
    std::size_t trials = 0;
    double max_residual = 0.0;              // max |h(x) - y| over trials
    std::size_t membership_failures = 0;    // preimage outside its box (or identity false)
    double tolerance = 1e-9;
    bool pass() const noexcept { return max_residual <= tolerance && membership_failures == 0; }
};

/// Random cases satisfying each construction's hypotheses (n <= 6 outputs,
/// m <= 10 inputs), checked by forward evaluation:
///
///   rect-halfopen  y >= h(u); x = preimage must satisfy x >= u
///   rect-bounded   y in [h(u1), h(u2)]; x must lie in [u1, u2]
///   relu-preimage  v >= 0; x must be >= 0
///   relu-segment   relu(lambda u + (1 - lambda) relu(u)) == relu(u) exactly
LemmaReport run_lemma_campaign(LemmaKind kind, std::size_t trials, std::uint64_t seed);

std::string lemma_report_to_text(const LemmaReport& report);

}  // namespace regioncert
