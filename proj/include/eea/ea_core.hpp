#pragma once

/// @file ea_core.hpp
/// @brief (1+1)RUS and (1+1)EP as single-step transitions plus a trajectory runner.
///
/// RUS mutates one uniformly chosen coordinate, EP all coordinates, both with N(0, σ²)
/// perturbations and elitist selection (ties accept). A proposal outside the feasible
/// domain is replaced by the current point and recorded as a rejection.
///
/// Stream consumption: RUS draws the coordinate index only when n > 1, then one Gaussian;
/// EP draws n Gaussians in coordinate order. At n = 1 both algorithms therefore consume
/// the stream identically and produce bit-identical steps.

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "eea/problems.hpp"
#include "eea/sampler.hpp"

namespace eea::core {

enum class Algorithm { Rus, Ep };

std::string_view to_string(Algorithm algo) noexcept;

struct SearchState {
    std::vector<double> x;
    double fitness;
    std::uint64_t generation = 0;
};

struct StepRecord {
    std::vector<double> proposed;
    bool accepted;
    problems::TransitionKind transition;
    double improvement;
};

struct Trajectory {
    SearchState final_state;
    std::vector<StepRecord> records;
};

/// Builds a generation-0 state, evaluating (and therefore feasibility-checking) x.
SearchState make_state(const problems::ProblemSpec& spec, std::vector<double> x);

/// Throws InconsistentStateError unless the cached fitness equals evaluate(spec, x) exactly.
void check_state(const problems::ProblemSpec& spec, const SearchState& state);

/// Writes x + z into `out`, z having one N(0, σ²) component at a uniform index.
void mutate_rus(std::span<const double> x, double sigma, sampler::RngStream& stream,
                std::span<double> out);

/// Writes x + z into `out`, z ~ N(0, σ² Iₙ).
void mutate_ep(std::span<const double> x, double sigma, sampler::RngStream& stream,
               std::span<double> out);

void mutate(Algorithm algo, std::span<const double> x, double sigma, sampler::RngStream& stream,
            std::span<double> out);

/// Outcome of elitist selection for a proposal y against a current point with fitness fx.
struct Selection {
    bool feasible;
    bool accepted;
    double fitness;  // f(y) when feasible, fx otherwise
    problems::TransitionKind transition;
};

Selection select(const problems::ProblemSpec& spec, problems::RegionLabel from, double fx,
                 std::span<const double> y);

std::pair<SearchState, StepRecord> rus_step(const problems::ProblemSpec& spec,
                                            const SearchState& state, double sigma,
                                            sampler::RngStream& stream);

std::pair<SearchState, StepRecord> ep_step(const problems::ProblemSpec& spec,
                                           const SearchState& state, double sigma,
                                           sampler::RngStream& stream);

std::pair<SearchState, StepRecord> step(Algorithm algo, const problems::ProblemSpec& spec,
                                        const SearchState& state, double sigma,
                                        sampler::RngStream& stream);

Trajectory run(const problems::ProblemSpec& spec, Algorithm algo, const SearchState& init,
               double sigma, std::uint64_t generations, sampler::RngStream& stream);

}  // namespace eea::core
