#pragma once

/// @file montecarlo.hpp
/// @brief Seeded one-step Monte-Carlo estimates of success probability and improvement rate.
///
/// Every sample applies one mutation + elitist selection (the ea-core step) to a start point
/// with fitness C and scores the outcome. Samples are split into `partitions` contiguous
/// blocks; block p draws from RngStream(master_seed, p) and the block results are merged in
/// index order, so an estimate is a pure function of (inputs, samples, master_seed,
/// partitions) regardless of how many threads execute the blocks. Different partition
/// counts consume different streams and give (statistically equivalent) different estimates.

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "eea/ea_core.hpp"
#include "eea/problems.hpp"
#include "eea/sampler.hpp"

namespace eea::mc {

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t master_seed = 0;
    std::uint64_t partitions = 1;
    double confidence = 0.99;
    /// Worker threads; 0 = hardware concurrency. Never affects results.
    unsigned threads = 0;
};

struct McEstimate {
    double mean;
    double std_error;
    double ci_lo;
    double ci_hi;
    std::uint64_t samples;
    std::optional<std::uint64_t> successes;  // probability mode only
};

enum class Target { Exploitation, RightExploration };

std::string_view to_string(Target target) noexcept;

/// ‖x‖² of a start point with fitness C for the given target:
/// C for exploitation, 2M + 1 − C for right exploration on the cheating problem.
double start_norm2(const problems::ProblemSpec& spec, double c, Target target);

/// Wilson score interval for k successes out of n at two-sided `confidence`.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double confidence);

McEstimate estimate_success_probability(const problems::ProblemSpec& spec, core::Algorithm algo,
                                        const sampler::Placement& placement, double c,
                                        double sigma, Target target, const McConfig& cfg);

/// Mean of (C − f(y))/C over samples whose step hits the target, zero otherwise.
McEstimate estimate_improvement_rate(const problems::ProblemSpec& spec, core::Algorithm algo,
                                     const sampler::Placement& placement, double c, double sigma,
                                     Target target, const McConfig& cfg);

/// Fixed-start variants: the start point is `x` itself (C = f(x)).
McEstimate estimate_success_probability_at(const problems::ProblemSpec& spec,
                                           core::Algorithm algo, std::span<const double> x,
                                           double sigma, Target target, const McConfig& cfg);
McEstimate estimate_improvement_rate_at(const problems::ProblemSpec& spec, core::Algorithm algo,
                                        std::span<const double> x, double sigma, Target target,
                                        const McConfig& cfg);

/// One-step frequencies of every TransitionKind (cheating problem only).
std::map<problems::TransitionKind, McEstimate> estimate_transition_mix(
    const problems::ProblemSpec& spec, core::Algorithm algo, const sampler::Placement& placement,
    double c, double sigma, const McConfig& cfg);

}  // namespace eea::mc
