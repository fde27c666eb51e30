#include "eea/ea_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eea/errors.hpp"

namespace eea::core {

using problems::ProblemSpec;
using problems::RegionLabel;
using problems::TransitionKind;

namespace {

void require_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("sigma must be finite and > 0");
    }
}

void require_sizes(std::span<const double> x, std::span<double> out) {
    if (x.empty() || x.size() != out.size()) {
        throw DomainError("mutation: input and output must be nonempty and of equal size");
    }
}

}  // namespace

std::string_view to_string(Algorithm algo) noexcept {
    return algo == Algorithm::Rus ? "rus" : "ep";
}

SearchState make_state(const ProblemSpec& spec, std::vector<double> x) {
    const double f = problems::evaluate(spec, x);
    return {std::move(x), f, 0};
}

void check_state(const ProblemSpec& spec, const SearchState& state) {
    const double f = problems::evaluate(spec, state.x);
    if (f != state.fitness) {
        throw InconsistentStateError("cached fitness " + std::to_string(state.fitness) +
                                     " differs from recomputed " + std::to_string(f));
    }
}

void mutate_rus(std::span<const double> x, double sigma, sampler::RngStream& stream,
                std::span<double> out) {
    require_sigma(sigma);
    require_sizes(x, out);
    std::copy(x.begin(), x.end(), out.begin());
    const std::size_t j = x.size() > 1 ? stream.index(x.size()) : 0;
    out[j] += sigma * stream.standard_normal();
}

void mutate_ep(std::span<const double> x, double sigma, sampler::RngStream& stream,
               std::span<double> out) {
    require_sigma(sigma);
    require_sizes(x, out);
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] + sigma * stream.standard_normal();
    }
}

void mutate(Algorithm algo, std::span<const double> x, double sigma, sampler::RngStream& stream,
            std::span<double> out) {
    if (algo == Algorithm::Rus) {
        mutate_rus(x, sigma, stream, out);
    } else {
        mutate_ep(x, sigma, stream, out);
    }
}

Selection select(const ProblemSpec& spec, RegionLabel from, double fx, std::span<const double> y) {
    const double r2 = problems::norm2(y);
    const RegionLabel to = problems::classify_norm2(spec, r2);
    if (to == RegionLabel::Infeasible) {
        return {false, false, fx, TransitionKind::Rejected};
    }
    const double fy = problems::evaluate_norm2(spec, r2);
    const bool accepted = fy <= fx;
    return {true, accepted, fy, problems::classify_labels(from, to, accepted)};
}

namespace {

std::pair<SearchState, StepRecord> finish_step(const ProblemSpec& spec, const SearchState& state,
                                               std::vector<double> y) {
    const RegionLabel from = problems::classify_point(spec, state.x);
    if (from == RegionLabel::Infeasible) {
        throw InfeasiblePointError("step: current state is infeasible");
    }
    const Selection sel = select(spec, from, state.fitness, y);

    SearchState next;
    next.generation = state.generation + 1;
    if (sel.accepted) {
        next.x = y;
        next.fitness = sel.fitness;
    } else {
        next.x = state.x;
        next.fitness = state.fitness;
    }
#ifndef NDEBUG
    check_state(spec, next);
#endif
    StepRecord record{std::move(y), sel.accepted, sel.transition,
                      std::max(0.0, state.fitness - next.fitness)};
    return {std::move(next), std::move(record)};
}

}  // namespace

std::pair<SearchState, StepRecord> rus_step(const ProblemSpec& spec, const SearchState& state,
                                            double sigma, sampler::RngStream& stream) {
    std::vector<double> y(state.x.size());
    mutate_rus(state.x, sigma, stream, y);
    return finish_step(spec, state, std::move(y));
}

std::pair<SearchState, StepRecord> ep_step(const ProblemSpec& spec, const SearchState& state,
                                           double sigma, sampler::RngStream& stream) {
    std::vector<double> y(state.x.size());
    mutate_ep(state.x, sigma, stream, y);
    return finish_step(spec, state, std::move(y));
}

std::pair<SearchState, StepRecord> step(Algorithm algo, const ProblemSpec& spec,
                                        const SearchState& state, double sigma,
                                        sampler::RngStream& stream) {
    return algo == Algorithm::Rus ? rus_step(spec, state, sigma, stream)
                                  : ep_step(spec, state, sigma, stream);
}

Trajectory run(const ProblemSpec& spec, Algorithm algo, const SearchState& init, double sigma,
               std::uint64_t generations, sampler::RngStream& stream) {
    require_sigma(sigma);
    if (init.x.size() != spec.dimension()) {
        throw DomainError("run: initial state has the wrong dimension");
    }
    Trajectory out{init, {}};
    out.records.reserve(generations);
    for (std::uint64_t g = 0; g < generations; ++g) {
        auto [next, record] = step(algo, spec, out.final_state, sigma, stream);
        out.final_state = std::move(next);
        out.records.push_back(std::move(record));
    }
    return out;
}

}  // namespace eea::core
