#include "eea/montecarlo.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "eea/errors.hpp"
#include "eea/numerics.hpp"

namespace eea::mc {

using problems::ProblemKind;
using problems::ProblemSpec;
using problems::RegionLabel;
using problems::TransitionKind;

namespace {

struct Tally {
    std::array<std::uint64_t, 4> transitions{};
    std::uint64_t successes = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
};

/// What one sample starts from: a fixed point, or a placement redrawn per sample.
struct StartRule {
    std::optional<sampler::Placement> placement;
    std::vector<double> fixed;
};

struct Job {
    const ProblemSpec& spec;
    core::Algorithm algo;
    StartRule start;
    double c;
    double sigma;
    Target target;
};

void validate(const McConfig& cfg) {
    if (cfg.samples < 1) {
        throw DomainError("McConfig: samples must be >= 1");
    }
    if (cfg.partitions < 1 || cfg.partitions > cfg.samples) {
        throw DomainError("McConfig: partitions must lie in [1, samples]");
    }
    if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0)) {
        throw DomainError("McConfig: confidence must lie in (0, 1)");
    }
}

void require_supported(const ProblemSpec& spec, Target target) {
    if (target == Target::RightExploration && spec.kind() == ProblemKind::Sphere) {
        throw UnsupportedProblemError("right exploration is only defined on the cheating problem");
    }
}

bool hit(const ProblemSpec& spec, Target target, const core::Selection& sel) {
    if (target == Target::RightExploration) {
        return sel.transition == TransitionKind::RightExploration;
    }
    if (spec.kind() == ProblemKind::Sphere) {
        return sel.accepted;
    }
    return sel.transition == TransitionKind::Exploitation;
}

Tally run_partition(const Job& job, std::uint64_t samples, sampler::RngStream stream) {
    const std::size_t n = job.spec.dimension();
    std::vector<double> x = job.start.fixed;
    std::vector<double> y(n);
    const bool redraw = job.start.placement && job.start.placement->is_random();
    if (job.start.placement && !redraw) {
        x.resize(n);
        sampler::place_into(*job.start.placement, x, stream);
    }
    RegionLabel from = problems::classify_norm2(job.spec, problems::norm2(x));
    double fx = x.empty() ? job.c : problems::evaluate_norm2(job.spec, problems::norm2(x));

    Tally t;
    for (std::uint64_t s = 0; s < samples; ++s) {
        if (redraw) {
            x.resize(n);
            sampler::place_into(*job.start.placement, x, stream);
            const double r2 = problems::norm2(x);
            from = problems::classify_norm2(job.spec, r2);
            fx = problems::evaluate_norm2(job.spec, r2);
        }
        core::mutate(job.algo, x, job.sigma, stream, y);
        const core::Selection sel = core::select(job.spec, from, fx, y);
        ++t.transitions[static_cast<std::size_t>(sel.transition)];
        if (hit(job.spec, job.target, sel)) {
            ++t.successes;
            const double gain = (job.c - sel.fitness) / job.c;
            t.sum += gain;
            t.sum_sq += gain * gain;
        }
    }
    return t;
}

Tally run_job(const Job& job, const McConfig& cfg) {
    validate(cfg);
    const std::uint64_t parts = cfg.partitions;
    std::vector<Tally> tallies(parts);
    std::vector<std::exception_ptr> errors(parts);

    auto work = [&](std::uint64_t p) {
        const std::uint64_t base = cfg.samples / parts;
        const std::uint64_t count = base + (p < cfg.samples % parts ? 1 : 0);
        try {
            tallies[p] = run_partition(job, count, sampler::RngStream(cfg.master_seed, p));
        } catch (...) {
            errors[p] = std::current_exception();
        }
    };

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
    workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(workers, 1U), parts));
    if (workers == 1) {
        for (std::uint64_t p = 0; p < parts; ++p) {
            work(p);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t p = next++; p < parts; p = next++) {
                    work(p);
                }
            });
        }
    }

    Tally total;
    for (std::uint64_t p = 0; p < parts; ++p) {
        if (errors[p]) {
            std::rethrow_exception(errors[p]);
        }
        for (std::size_t k = 0; k < total.transitions.size(); ++k) {
            total.transitions[k] += tallies[p].transitions[k];
        }
        total.successes += tallies[p].successes;
        total.sum += tallies[p].sum;
        total.sum_sq += tallies[p].sum_sq;
    }
    return total;
}

McEstimate probability_estimate(std::uint64_t k, std::uint64_t n, double confidence) {
    const double dn = static_cast<double>(n);
    const double p = static_cast<double>(k) / dn;
    const auto [lo, hi] = wilson_interval(k, n, confidence);
    return {p, std::sqrt(p * (1.0 - p) / dn), lo, hi, n, k};
}

McEstimate mean_estimate(const Tally& t, std::uint64_t n, double confidence) {
    const double dn = static_cast<double>(n);
    const double mean = t.sum / dn;
    const double var = n > 1 ? std::max(0.0, (t.sum_sq - dn * mean * mean) / (dn - 1.0)) : 0.0;
    const double se = std::sqrt(var / dn);
    const double z = numerics::gaussian_quantile(0.5 + 0.5 * confidence);
    return {mean, se, mean - z * se, mean + z * se, n, std::nullopt};
}

void require_sigma_and_c(double c, double sigma) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw DomainError("C must be finite and > 0");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("sigma must be finite and > 0");
    }
}

Job placement_job(const ProblemSpec& spec, core::Algorithm algo,
                  const sampler::Placement& placement, double c, double sigma, Target target) {
    require_sigma_and_c(c, sigma);
    require_supported(spec, target);
    const double expected = start_norm2(spec, c, target);
    if (std::abs(placement.target_norm2 - expected) > 1e-12 * expected) {
        throw InconsistentStateError("placement has ||x||^2 = " +
                                     std::to_string(placement.target_norm2) + " but C = " +
                                     std::to_string(c) + " requires " + std::to_string(expected));
    }
    return {spec, algo, {placement, {}}, c, sigma, target};
}

Job fixed_job(const ProblemSpec& spec, core::Algorithm algo, std::span<const double> x,
              double sigma, Target target) {
    require_supported(spec, target);
    const double c = problems::evaluate(spec, x);
    require_sigma_and_c(c, sigma);
    const RegionLabel label = problems::classify_point(spec, x);
    if (target == Target::RightExploration && label != RegionLabel::CheatingRegion) {
        throw InconsistentStateError("right exploration needs a start in the cheating region");
    }
    if (target == Target::Exploitation && spec.kind() == ProblemKind::Cheating &&
        label != RegionLabel::Absorbing) {
        throw InconsistentStateError("cheating exploitation is measured from the absorbing region");
    }
    return {spec, algo, {std::nullopt, {x.begin(), x.end()}}, c, sigma, target};
}

}  // namespace

std::string_view to_string(Target target) noexcept {
    return target == Target::Exploitation ? "exploit" : "explore";
}

double start_norm2(const ProblemSpec& spec, double c, Target target) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw DomainError("C must be finite and > 0");
    }
    require_supported(spec, target);
    if (spec.kind() == ProblemKind::Sphere) {
        return c;
    }
    const double m = spec.m();
    if (target == Target::Exploitation) {
        if (c > m) {
            throw InconsistentStateError("an absorbing-region point has fitness C <= M");
        }
        return c;
    }
    if (!(c >= 1.0 && c < m + 1.0)) {
        throw InconsistentStateError("a cheating-region point has fitness 1 <= C < M + 1");
    }
    return 2.0 * m + 1.0 - c;
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double confidence) {
    if (n == 0 || k > n) {
        throw DomainError("wilson_interval: need 0 <= k <= n and n >= 1");
    }
    const double z = numerics::gaussian_quantile(0.5 + 0.5 * confidence);
    const double dn = static_cast<double>(n);
    const double p = static_cast<double>(k) / dn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / dn;
    const double center = (p + z2 / (2.0 * dn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / dn + z2 / (4.0 * dn * dn)) / denom;
    return {std::max(0.0, std::min(center - half, p)), std::min(1.0, std::max(center + half, p))};
}

McEstimate estimate_success_probability(const ProblemSpec& spec, core::Algorithm algo,
                                        const sampler::Placement& placement, double c,
                                        double sigma, Target target, const McConfig& cfg) {
    const Tally t = run_job(placement_job(spec, algo, placement, c, sigma, target), cfg);
    return probability_estimate(t.successes, cfg.samples, cfg.confidence);
}

McEstimate estimate_improvement_rate(const ProblemSpec& spec, core::Algorithm algo,
                                     const sampler::Placement& placement, double c, double sigma,
                                     Target target, const McConfig& cfg) {
    const Tally t = run_job(placement_job(spec, algo, placement, c, sigma, target), cfg);
    return mean_estimate(t, cfg.samples, cfg.confidence);
}

McEstimate estimate_success_probability_at(const ProblemSpec& spec, core::Algorithm algo,
                                           std::span<const double> x, double sigma,
                                           Target target, const McConfig& cfg) {
    const Tally t = run_job(fixed_job(spec, algo, x, sigma, target), cfg);
    return probability_estimate(t.successes, cfg.samples, cfg.confidence);
}

McEstimate estimate_improvement_rate_at(const ProblemSpec& spec, core::Algorithm algo,
                                        std::span<const double> x, double sigma, Target target,
                                        const McConfig& cfg) {
    const Tally t = run_job(fixed_job(spec, algo, x, sigma, target), cfg);
    return mean_estimate(t, cfg.samples, cfg.confidence);
}

std::map<TransitionKind, McEstimate> estimate_transition_mix(const ProblemSpec& spec,
                                                             core::Algorithm algo,
                                                             const sampler::Placement& placement,
                                                             double c, double sigma,
                                                             const McConfig& cfg) {
    if (spec.kind() != ProblemKind::Cheating) {
        throw UnsupportedProblemError("transition mix is defined for the cheating problem only");
    }
    require_sigma_and_c(c, sigma);
    // The start may sit in either region; only the shell radius has to be feasible.
    const double r2 = placement.target_norm2;
    if (problems::classify_norm2(spec, r2) == RegionLabel::Infeasible) {
        throw InconsistentStateError("placement lies outside the cheating domain");
    }
    if (std::abs(problems::evaluate_norm2(spec, r2) - c) > 1e-12 * c) {
        throw InconsistentStateError("placement fitness does not equal C = " + std::to_string(c));
    }
    const Job job{spec, algo, {placement, {}}, c, sigma, Target::Exploitation};
    const Tally t = run_job(job, cfg);
    std::map<TransitionKind, McEstimate> out;
    for (auto kind : {TransitionKind::Exploitation, TransitionKind::RightExploration,
                      TransitionKind::MistakenExploration, TransitionKind::Rejected}) {
        out.emplace(kind, probability_estimate(t.transitions[static_cast<std::size_t>(kind)],
                                               cfg.samples, cfg.confidence));
    }
    return out;
}

}  // namespace eea::mc
