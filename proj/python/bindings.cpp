#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eea/bounds.hpp"
#include "eea/ea_core.hpp"
#include "eea/errors.hpp"
#include "eea/harness.hpp"
#include "eea/montecarlo.hpp"
#include "eea/numerics.hpp"
#include "eea/problems.hpp"
#include "eea/sampler.hpp"

namespace py = pybind11;
using namespace eea;

namespace {

problems::ProblemSpec make_spec(const std::string& problem, std::size_t n, std::optional<double> m) {
    if (problem == "sphere") {
        return problems::ProblemSpec::sphere(n);
    }
    if (problem == "cheating") {
        if (!m) {
            throw std::invalid_argument("the cheating problem needs m");
        }
        return problems::ProblemSpec::cheating(n, *m);
    }
    throw std::invalid_argument("problem must be 'sphere' or 'cheating', got '" + problem + "'");
}

core::Algorithm parse_algo(const std::string& s) {
    if (s == "rus") {
        return core::Algorithm::Rus;
    }
    if (s == "ep") {
        return core::Algorithm::Ep;
    }
    throw std::invalid_argument("algo must be 'rus' or 'ep', got '" + s + "'");
}

sampler::PlacementKind parse_placement(const std::string& s) {
    for (auto k : {sampler::PlacementKind::SingleAxis, sampler::PlacementKind::EqualCoordinates,
                   sampler::PlacementKind::UniformOnShell}) {
        if (sampler::to_string(k) == s) {
            return k;
        }
    }
    throw std::invalid_argument("placement must be single-axis, equal or shell, got '" + s + "'");
}

mc::Target parse_target(const std::string& s) {
    if (s == "exploit") {
        return mc::Target::Exploitation;
    }
    if (s == "explore") {
        return mc::Target::RightExploration;
    }
    throw std::invalid_argument("target must be 'exploit' or 'explore', got '" + s + "'");
}

mc::McConfig make_config(std::uint64_t samples, std::uint64_t seed, std::uint64_t partitions,
                         double confidence) {
    mc::McConfig cfg;
    cfg.samples = samples;
    cfg.master_seed = seed;
    cfg.partitions = partitions;
    cfg.confidence = confidence;
    return cfg;
}

using Estimator = mc::McEstimate (*)(const problems::ProblemSpec&, core::Algorithm,
                                     const sampler::Placement&, double, double, mc::Target,
                                     const mc::McConfig&);

mc::McEstimate estimate(Estimator fn, const std::string& problem, std::size_t n,
                        const std::string& algo, const std::string& placement, double c,
                        double sigma, const std::string& target, std::uint64_t samples,
                        std::uint64_t seed, std::uint64_t partitions, double confidence,
                        std::optional<double> m) {
    const auto spec = make_spec(problem, n, m);
    const auto tgt = parse_target(target);
    const sampler::Placement pl{parse_placement(placement), mc::start_norm2(spec, c, tgt)};
    const auto cfg = make_config(samples, seed, partitions, confidence);
    py::gil_scoped_release release;
    return fn(spec, parse_algo(algo), pl, c, sigma, tgt, cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bounds and simulations for elitist (1+1) evolutionary algorithms";

    py::register_exception<InfeasiblePointError>(m, "InfeasiblePointError", PyExc_ValueError);
    py::register_exception<InconsistentStateError>(m, "InconsistentStateError", PyExc_ValueError);
    py::register_exception<UnsupportedProblemError>(m, "UnsupportedProblemError", PyExc_ValueError);
    py::register_exception<DecayFitError>(m, "DecayFitError", PyExc_ValueError);
    py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // numerics
    m.def("gaussian_cdf", &numerics::gaussian_cdf, py::arg("z"));
    m.def("psi", &numerics::psi, py::arg("z"));
    m.def(
        "integrate",
        [](const std::function<double(double)>& f, double a, double b, double abs_tol,
           std::size_t max_subdivisions) {
            return numerics::integrate(f, a, b, {abs_tol, max_subdivisions});
        },
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("abs_tol") = 1e-10,
        py::arg("max_subdivisions") = 2000);
    m.def(
        "maximize_1d",
        [](const std::function<double(double)>& f, double lo, double hi, double tol) {
            const auto r = numerics::maximize_1d(f, {lo, hi}, tol);
            return py::make_tuple(r.arg, r.value);
        },
        py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-9);

    // problems
    m.def(
        "evaluate",
        [](const std::string& problem, const std::vector<double>& x, std::optional<double> mm) {
            return problems::evaluate(make_spec(problem, x.size(), mm), x);
        },
        py::arg("problem"), py::arg("x"), py::arg("m") = py::none());
    m.def(
        "classify_point",
        [](const std::string& problem, const std::vector<double>& x, std::optional<double> mm) {
            return std::string(
                problems::to_string(problems::classify_point(make_spec(problem, x.size(), mm), x)));
        },
        py::arg("problem"), py::arg("x"), py::arg("m") = py::none());

    // bounds
    py::class_<bounds::BoundValue>(m, "BoundValue")
        .def_property_readonly("formula",
                               [](const bounds::BoundValue& b) { return std::string(to_string(b.formula)); })
        .def_property_readonly("kind",
                               [](const bounds::BoundValue& b) { return std::string(to_string(b.kind)); })
        .def_readonly("lower", &bounds::BoundValue::lower)
        .def_readonly("upper", &bounds::BoundValue::upper)
        .def_readonly("raw_lower", &bounds::BoundValue::raw_lower)
        .def_property_readonly("value", &bounds::BoundValue::value)
        .def("contains", &bounds::BoundValue::contains, py::arg("v"), py::arg("slack") = 0.0)
        .def("__repr__", [](const bounds::BoundValue& b) {
            return "BoundValue(" + std::string(to_string(b.formula)) + ", " +
                   std::string(to_string(b.kind)) + ", lower=" + std::to_string(b.lower) +
                   ", upper=" + std::to_string(b.upper) + ")";
        });

    m.def("p_sph_1d", &bounds::p_sph_1d, py::arg("c"), py::arg("sigma"));
    m.def(
        "p_sph_rus",
        [](const std::vector<double>& xs, double c, double sigma) {
            const auto r = bounds::p_sph_rus(xs, c, sigma);
            return py::make_tuple(r.exact, r.sandwich);
        },
        py::arg("xs"), py::arg("c"), py::arg("sigma"));
    m.def("p_sph_ep_bounds", &bounds::p_sph_ep_bounds, py::arg("c"), py::arg("sigma"), py::arg("n"));
    m.def("ir_sph_1d", &bounds::ir_sph_1d, py::arg("c"), py::arg("sigma"));
    m.def(
        "ir_sph_rus",
        [](const std::vector<double>& xs, double c, double sigma) {
            return bounds::ir_sph_rus(xs, c, sigma);
        },
        py::arg("xs"), py::arg("c"), py::arg("sigma"));
    m.def("ir_sph_ep_bounds", &bounds::ir_sph_ep_bounds, py::arg("c"), py::arg("sigma"), py::arg("n"));
    m.def("p_cht_1d", &bounds::p_cht_1d, py::arg("m"), py::arg("c"), py::arg("sigma"));
    m.def("optimal_sigma", &bounds::optimal_sigma, py::arg("a"), py::arg("b"));
    m.def("optimal_sigma_cht_1d", &bounds::optimal_sigma_cht_1d, py::arg("m"), py::arg("c"));
    m.def("rus_cht_coordinate_feasible", &bounds::rus_cht_coordinate_feasible, py::arg("m"),
          py::arg("c"), py::arg("xi2"));
    m.def("p_cht_ep_bounds", &bounds::p_cht_ep_bounds, py::arg("m"), py::arg("c"), py::arg("sigma"),
          py::arg("n"));
    m.def("ir_cht_1d", &bounds::ir_cht_1d, py::arg("m"), py::arg("c"), py::arg("sigma"));
    m.def("ir_cht_ep_bounds", &bounds::ir_cht_ep_bounds, py::arg("m"), py::arg("c"),
          py::arg("sigma"), py::arg("n"));
    m.def(
        "fit_decay_base",
        [](const std::map<std::size_t, double>& values, const std::string& offset) {
            if (offset != "n" && offset != "n-1") {
                throw std::invalid_argument("offset must be 'n' or 'n-1'");
            }
            const auto fit = bounds::fit_decay_base(
                values, offset == "n" ? bounds::DecayOffset::N : bounds::DecayOffset::NMinus1);
            return py::make_tuple(fit.base_a, fit.r2);
        },
        py::arg("values"), py::arg("offset") = "n-1");

    // montecarlo
    py::class_<mc::McEstimate>(m, "McEstimate")
        .def_readonly("mean", &mc::McEstimate::mean)
        .def_readonly("std_error", &mc::McEstimate::std_error)
        .def_readonly("ci_lo", &mc::McEstimate::ci_lo)
        .def_readonly("ci_hi", &mc::McEstimate::ci_hi)
        .def_readonly("samples", &mc::McEstimate::samples)
        .def_readonly("successes", &mc::McEstimate::successes)
        .def("__repr__", [](const mc::McEstimate& e) {
            return "McEstimate(mean=" + std::to_string(e.mean) +
                   ", std_error=" + std::to_string(e.std_error) + ")";
        });

    m.def(
        "estimate_success_probability",
        [](const std::string& problem, std::size_t n, const std::string& algo, double c,
           double sigma, std::uint64_t seed, const std::string& placement,
           const std::string& target, std::uint64_t samples, std::uint64_t partitions,
           double confidence, std::optional<double> mm) {
            return estimate(&mc::estimate_success_probability, problem, n, algo, placement, c,
                            sigma, target, samples, seed, partitions, confidence, mm);
        },
        py::arg("problem"), py::arg("n"), py::arg("algo"), py::arg("c"), py::arg("sigma"),
        py::kw_only(), py::arg("seed"), py::arg("placement") = "single-axis",
        py::arg("target") = "exploit", py::arg("samples") = 1'000'000, py::arg("partitions") = 1,
        py::arg("confidence") = 0.99, py::arg("m") = py::none());
    m.def(
        "estimate_improvement_rate",
        [](const std::string& problem, std::size_t n, const std::string& algo, double c,
           double sigma, std::uint64_t seed, const std::string& placement,
           const std::string& target, std::uint64_t samples, std::uint64_t partitions,
           double confidence, std::optional<double> mm) {
            return estimate(&mc::estimate_improvement_rate, problem, n, algo, placement, c, sigma,
                            target, samples, seed, partitions, confidence, mm);
        },
        py::arg("problem"), py::arg("n"), py::arg("algo"), py::arg("c"), py::arg("sigma"),
        py::kw_only(), py::arg("seed"), py::arg("placement") = "single-axis",
        py::arg("target") = "exploit", py::arg("samples") = 1'000'000, py::arg("partitions") = 1,
        py::arg("confidence") = 0.99, py::arg("m") = py::none());

    // ea-core
    m.def(
        "run",
        [](const std::string& problem, std::size_t n, const std::string& algo, double sigma,
           std::uint64_t generations, std::uint64_t seed, double init_norm2,
           const std::string& placement, std::optional<double> mm) {
            const auto spec = make_spec(problem, n, mm);
            sampler::RngStream start(seed, 0);
            const auto x = sampler::place({parse_placement(placement), init_norm2}, n, start);
            sampler::RngStream stream(seed, 1);
            const auto t = core::run(spec, parse_algo(algo), core::make_state(spec, x), sigma,
                                     generations, stream);
            std::vector<double> fitness;
            std::vector<std::string> transitions;
            double f = core::make_state(spec, x).fitness;
            fitness.reserve(t.records.size());
            transitions.reserve(t.records.size());
            for (const auto& r : t.records) {
                f -= r.improvement;
                fitness.push_back(f);
                transitions.emplace_back(problems::to_string(r.transition));
            }
            py::dict out;
            out["final_x"] = t.final_state.x;
            out["final_fitness"] = t.final_state.fitness;
            out["fitness"] = fitness;
            out["transitions"] = transitions;
            return out;
        },
        py::arg("problem"), py::arg("n"), py::arg("algo"), py::arg("sigma"),
        py::arg("generations"), py::kw_only(), py::arg("seed"), py::arg("init_norm2"),
        py::arg("placement") = "single-axis", py::arg("m") = py::none());

    // harness
    py::class_<harness::SweepTable>(m, "SweepTable")
        .def_readonly("header", &harness::SweepTable::header)
        .def_readonly("rows", &harness::SweepTable::rows)
        .def_readonly("metadata", &harness::SweepTable::metadata)
        .def("column", &harness::SweepTable::column_values, py::arg("name"));
    m.def(
        "run_sweep",
        [](const std::string& experiment, std::optional<std::uint64_t> seed,
           std::optional<std::uint64_t> samples, std::optional<std::vector<std::size_t>> dims) {
            auto spec = harness::default_sweep(harness::parse_experiment(experiment));
            if (spec.mc) {
                if (!seed) {
                    throw std::invalid_argument("experiment '" + experiment + "' is random; pass seed");
                }
                spec.mc->master_seed = *seed;
                if (samples) {
                    spec.mc->samples = *samples;
                }
            }
            if (dims) {
                spec.dims = *dims;
            }
            py::gil_scoped_release release;
            return harness::run_sweep(spec);
        },
        py::arg("experiment"), py::kw_only(), py::arg("seed") = py::none(),
        py::arg("samples") = py::none(), py::arg("dims") = py::none());
    m.def("format_csv", &harness::format_csv, py::arg("table"));
}
