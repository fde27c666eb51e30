// eea: command-line front end for the bound evaluators, Monte-Carlo estimators and sweeps.
//
// Exit codes: 0 success, 2 invalid arguments, 3 runtime or numerical failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eea/bounds.hpp"
#include "eea/ea_core.hpp"
#include "eea/errors.hpp"
#include "eea/harness.hpp"
#include "eea/montecarlo.hpp"
#include "eea/numerics.hpp"
#include "eea/problems.hpp"
#include "eea/sampler.hpp"

namespace {

using namespace eea;

constexpr int kExitArgs = 2;
constexpr int kExitRuntime = 3;

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void kv(const std::string& key, const std::string& value) { std::cout << key << '=' << value << '\n'; }
void kv(const std::string& key, double value) { kv(key, num(value)); }

struct ProblemArgs {
    std::string problem = "sphere";
    std::size_t n = 1;
    std::optional<double> m;

    problems::ProblemSpec build() const {
        if (problem == "sphere") {
            if (m) {
                throw ArgumentError("--m applies to the cheating problem only");
            }
            return problems::ProblemSpec::sphere(n);
        }
        if (!m) {
            throw ArgumentError("the cheating problem needs --m");
        }
        return problems::ProblemSpec::cheating(n, *m);
    }
};

void add_problem_options(CLI::App* cmd, ProblemArgs& args) {
    cmd->add_option("--problem", args.problem, "Benchmark problem")
        ->check(CLI::IsMember({"sphere", "cheating"}));
    cmd->add_option("--n", args.n, "Dimension")->check(CLI::PositiveNumber);
    cmd->add_option("--m", args.m, "Cheating plateau boundary M")->check(CLI::PositiveNumber);
}

const std::map<std::string, sampler::PlacementKind> kPlacements{
    {"single-axis", sampler::PlacementKind::SingleAxis},
    {"equal", sampler::PlacementKind::EqualCoordinates},
    {"shell", sampler::PlacementKind::UniformOnShell},
};

const std::map<std::string, core::Algorithm> kAlgorithms{
    {"rus", core::Algorithm::Rus},
    {"ep", core::Algorithm::Ep},
};

void print_bound(const bounds::BoundValue& b, const std::string& prefix = "") {
    kv(prefix + "formula", std::string(bounds::to_string(b.formula)));
    kv(prefix + "kind", std::string(bounds::to_string(b.kind)));
    if (b.kind == bounds::BoundKind::Exact) {
        kv(prefix + "value", b.value());
    } else {
        kv(prefix + "lower", b.lower);
        kv(prefix + "upper", b.upper);
        kv(prefix + "raw_lower", b.raw_lower);
    }
}

void print_estimate(const mc::McEstimate& e, const std::string& prefix = "") {
    kv(prefix + "mean", e.mean);
    kv(prefix + "std_error", e.std_error);
    kv(prefix + "ci_lo", e.ci_lo);
    kv(prefix + "ci_hi", e.ci_hi);
    kv(prefix + "samples", std::to_string(e.samples));
    if (e.successes) {
        kv(prefix + "successes", std::to_string(*e.successes));
    }
}

struct BoundsArgs {
    ProblemArgs problem;
    std::string formula;
    double c = 1.0;
    double sigma = 1.0;
    std::string placement = "equal";
};

void cmd_bounds(const BoundsArgs& a) {
    const auto spec = a.problem.build();
    const std::size_t n = spec.dimension();
    const bool cheating = spec.kind() == problems::ProblemKind::Cheating;
    const std::string& f = a.formula;
    const bool wants_cheating = f.find("-cht-") != std::string::npos;
    if (wants_cheating != cheating) {
        throw ArgumentError("formula " + f + " does not belong to problem " + a.problem.problem);
    }
    auto shell_point = [&] {
        if (a.placement == "shell") {
            throw ArgumentError("bounds needs a deterministic placement (single-axis or equal)");
        }
        sampler::RngStream unused(0, 0);
        return sampler::place({kPlacements.at(a.placement), a.c}, n, unused);
    };
    if (f == "p-sph-1d") {
        print_bound(bounds::p_sph_1d(a.c, a.sigma));
    } else if (f == "p-sph-rus") {
        const auto r = bounds::p_sph_rus(shell_point(), a.c, a.sigma);
        print_bound(r.exact);
        print_bound(r.sandwich, "sandwich_");
    } else if (f == "p-sph-ep") {
        print_bound(bounds::p_sph_ep_bounds(a.c, a.sigma, n));
    } else if (f == "ir-sph-1d") {
        print_bound(bounds::ir_sph_1d(a.c, a.sigma));
    } else if (f == "ir-sph-rus") {
        print_bound(bounds::ir_sph_rus(shell_point(), a.c, a.sigma));
    } else if (f == "ir-sph-ep") {
        print_bound(bounds::ir_sph_ep_bounds(a.c, a.sigma, n));
    } else if (f == "p-cht-1d") {
        print_bound(bounds::p_cht_1d(spec.m(), a.c, a.sigma));
    } else if (f == "p-cht-ep") {
        print_bound(bounds::p_cht_ep_bounds(spec.m(), a.c, a.sigma, n));
    } else if (f == "ir-cht-1d") {
        print_bound(bounds::ir_cht_1d(spec.m(), a.c, a.sigma));
    } else if (f == "ir-cht-ep") {
        print_bound(bounds::ir_cht_ep_bounds(spec.m(), a.c, a.sigma, n));
    } else {
        throw ArgumentError("unknown formula " + f);
    }
}

struct McArgs {
    ProblemArgs problem;
    std::string algo = "ep";
    std::string placement = "single-axis";
    double c = 1.0;
    double sigma = 1.0;
    std::string target = "exploit";
    std::string metric = "probability";
    std::uint64_t samples = 1'000'000;
    std::optional<std::uint64_t> seed;
    std::uint64_t partitions = 1;
    double confidence = 0.99;
};

void cmd_mc(const McArgs& a) {
    if (!a.seed) {
        throw ArgumentError("mc requires an explicit --seed");
    }
    const auto spec = a.problem.build();
    const auto target = a.target == "exploit" ? mc::Target::Exploitation
                                              : mc::Target::RightExploration;
    const sampler::Placement placement{kPlacements.at(a.placement),
                                       mc::start_norm2(spec, a.c, target)};
    mc::McConfig cfg;
    cfg.samples = a.samples;
    cfg.master_seed = *a.seed;
    cfg.partitions = a.partitions;
    cfg.confidence = a.confidence;
    const auto algo = kAlgorithms.at(a.algo);
    const auto est =
        a.metric == "probability"
            ? mc::estimate_success_probability(spec, algo, placement, a.c, a.sigma, target, cfg)
            : mc::estimate_improvement_rate(spec, algo, placement, a.c, a.sigma, target, cfg);
    kv("metric", a.metric);
    print_estimate(est);
    kv("seed", std::to_string(cfg.master_seed));
    kv("partitions", std::to_string(cfg.partitions));
}

struct SweepArgs {
    std::string experiment;
    std::string out;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> partitions;
    std::vector<std::size_t> dims;
};

void cmd_sweep(const SweepArgs& a) {
    auto spec = harness::default_sweep(harness::parse_experiment(a.experiment));
    spec.output_path = a.out;
    if (!a.dims.empty()) {
        spec.dims = a.dims;
    }
    if (spec.mc) {
        if (!a.seed) {
            throw ArgumentError("sweep " + a.experiment + " is stochastic and requires --seed");
        }
        spec.mc->master_seed = *a.seed;
        if (a.samples) {
            spec.mc->samples = *a.samples;
        }
        if (a.partitions) {
            spec.mc->partitions = *a.partitions;
        }
    }
    const auto table = harness::run_sweep(spec);
    harness::emit_csv(table, a.out);
    kv("experiment", a.experiment);
    kv("rows", std::to_string(table.rows.size()));
    kv("columns", std::to_string(table.header.size()));
    kv("out", a.out);
    if (spec.experiment == harness::Experiment::Fig2) {
        const auto ir = table.column_values("ir_exact");
        const auto it = std::max_element(ir.begin(), ir.end());
        kv("max_ir", *it);
        kv("argmax_ratio", table.rows[static_cast<std::size_t>(it - ir.begin())][0]);
    }
    if (const auto* s = table.meta("sigma_star")) {
        kv("sigma_star", *s);
    }
}

struct RunArgs {
    ProblemArgs problem;
    std::string algo = "ep";
    double sigma = 1.0;
    std::uint64_t generations = 1000;
    std::optional<std::uint64_t> seed;
    std::optional<double> init_norm2;
    std::string placement = "equal";
};

void cmd_run(const RunArgs& a) {
    if (!a.seed) {
        throw ArgumentError("run requires an explicit --seed");
    }
    const auto spec = a.problem.build();
    double t = 1.0;
    if (a.init_norm2) {
        t = *a.init_norm2;
    } else if (spec.kind() == problems::ProblemKind::Cheating) {
        t = 1.5 * spec.m();
    }
    // Stream 0 places the start point, stream 1 drives the trajectory.
    sampler::RngStream placement_stream(*a.seed, 0);
    auto x = sampler::place({kPlacements.at(a.placement), t}, spec.dimension(), placement_stream);
    const auto init = core::make_state(spec, std::move(x));
    sampler::RngStream stream(*a.seed, 1);
    const auto traj = core::run(spec, kAlgorithms.at(a.algo), init, a.sigma, a.generations, stream);

    std::map<problems::TransitionKind, std::uint64_t> mix;
    std::uint64_t accepted = 0;
    for (const auto& r : traj.records) {
        ++mix[r.transition];
        accepted += r.accepted ? 1 : 0;
    }
    kv("problem", std::string(problems::to_string(spec.kind())));
    kv("algo", a.algo);
    kv("generations", std::to_string(traj.final_state.generation));
    kv("initial_fitness", init.fitness);
    kv("final_fitness", traj.final_state.fitness);
    kv("final_region",
       std::string(problems::to_string(problems::classify_point(spec, traj.final_state.x))));
    kv("accepted", std::to_string(accepted));
    for (auto kind : {problems::TransitionKind::Exploitation,
                      problems::TransitionKind::RightExploration,
                      problems::TransitionKind::MistakenExploration,
                      problems::TransitionKind::Rejected}) {
        kv(std::string("transitions.") + std::string(problems::to_string(kind)),
           std::to_string(mix[kind]));
    }
}

void cmd_opt_sigma(double m, double c) {
    const double closed = bounds::optimal_sigma_cht_1d(m, c);
    const double x = std::sqrt(2.0 * m + 1.0 - c);
    const double r = std::sqrt(std::min(c, m));
    const auto numeric = numerics::maximize_1d(
        [&](double s) { return bounds::p_cht_1d(m, c, s).value(); },
        {0.01 * (x - r), 2.0 * (x + r)}, 1e-10);
    kv("sigma_star_closed_form", closed);
    kv("sigma_star_numeric", numeric.arg);
    kv("difference", std::abs(closed - numeric.arg));
    kv("p_cht_1d_at_sigma_star", bounds::p_cht_1d(m, c, closed).value());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exploitation/exploration bounds and Monte-Carlo checks for elitist (1+1) EAs"};
    app.require_subcommand(1);

    BoundsArgs bounds_args;
    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a closed-form bound");
    add_problem_options(bounds_cmd, bounds_args.problem);
    bounds_cmd->add_option("--formula", bounds_args.formula, "Formula id")
        ->required()
        ->check(CLI::IsMember({"p-sph-1d", "p-sph-rus", "p-sph-ep", "ir-sph-1d", "ir-sph-rus",
                               "ir-sph-ep", "p-cht-1d", "p-cht-ep", "ir-cht-1d", "ir-cht-ep"}));
    bounds_cmd->add_option("--c", bounds_args.c, "Current fitness C")->required();
    bounds_cmd->add_option("--sigma", bounds_args.sigma, "Mutation standard deviation")->required();
    bounds_cmd->add_option("--placement", bounds_args.placement, "Shell point for RUS formulas")
        ->check(CLI::IsMember({"single-axis", "equal"}));

    McArgs mc_args;
    auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo estimate of one mutation-selection step");
    add_problem_options(mc_cmd, mc_args.problem);
    mc_cmd->add_option("--algo", mc_args.algo)->check(CLI::IsMember({"rus", "ep"}));
    mc_cmd->add_option("--placement", mc_args.placement)
        ->check(CLI::IsMember({"single-axis", "equal", "shell"}));
    mc_cmd->add_option("--c", mc_args.c)->required();
    mc_cmd->add_option("--sigma", mc_args.sigma)->required();
    mc_cmd->add_option("--target", mc_args.target)->check(CLI::IsMember({"exploit", "explore"}));
    mc_cmd->add_option("--metric", mc_args.metric)
        ->check(CLI::IsMember({"probability", "improvement"}));
    mc_cmd->add_option("--samples", mc_args.samples)->check(CLI::PositiveNumber);
    mc_cmd->add_option("--seed", mc_args.seed, "Master seed (required)");
    mc_cmd->add_option("--partitions", mc_args.partitions)->check(CLI::PositiveNumber);
    mc_cmd->add_option("--confidence", mc_args.confidence)->check(CLI::Range(0.0, 1.0));

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment sweep and write CSV");
    sweep_cmd->add_option("--experiment", sweep_args.experiment)
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "dim-decay", "rus-scaling",
                               "cht-opt-sigma", "cht-zero-prob"}));
    sweep_cmd->add_option("--out", sweep_args.out, "Output CSV path")->required();
    sweep_cmd->add_option("--samples", sweep_args.samples)->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sweep_args.seed, "Master seed (required for MC sweeps)");
    sweep_cmd->add_option("--partitions", sweep_args.partitions)->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--dims", sweep_args.dims, "Override the dimension list");

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run one trajectory and summarize it");
    add_problem_options(run_cmd, run_args.problem);
    run_cmd->add_option("--algo", run_args.algo)->check(CLI::IsMember({"rus", "ep"}));
    run_cmd->add_option("--sigma", run_args.sigma)->required();
    run_cmd->add_option("--generations", run_args.generations)->required();
    run_cmd->add_option("--seed", run_args.seed, "Master seed (required)");
    run_cmd->add_option("--init-norm2", run_args.init_norm2, "Squared norm of the start point")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--placement", run_args.placement)
        ->check(CLI::IsMember({"single-axis", "equal", "shell"}));

    double opt_m = 0.0;
    double opt_c = 0.0;
    auto* opt_cmd = app.add_subcommand("opt-sigma", "Optimal sigma for 1-D right exploration");
    opt_cmd->add_option("--m", opt_m)->required()->check(CLI::PositiveNumber);
    opt_cmd->add_option("--c", opt_c)->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitArgs;
    }

    try {
        if (bounds_cmd->parsed()) {
            cmd_bounds(bounds_args);
        } else if (mc_cmd->parsed()) {
            cmd_mc(mc_args);
        } else if (sweep_cmd->parsed()) {
            cmd_sweep(sweep_args);
        } else if (run_cmd->parsed()) {
            cmd_run(run_args);
        } else if (opt_cmd->parsed()) {
            cmd_opt_sigma(opt_m, opt_c);
        }
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitArgs;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitArgs;
    } catch (const InconsistentStateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitArgs;
    } catch (const UnsupportedProblemError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
