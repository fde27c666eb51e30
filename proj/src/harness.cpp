#include "eea/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "eea/bounds.hpp"
#include "eea/errors.hpp"
#include "eea/numerics.hpp"
#include "eea/sampler.hpp"

namespace eea::harness {

using core::Algorithm;
using problems::ProblemSpec;
using sampler::Placement;
using sampler::PlacementKind;

namespace {

constexpr std::string_view kFormatVersion = "eea-sweep/1";

std::string fmt_g(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

template <typename T>
std::string join(const std::vector<T>& values, int digits = 17) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ';';
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += fmt_g(values[i], digits);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

const mc::McConfig& require_mc(const SweepSpec& spec) {
    if (!spec.mc) {
        throw DomainError(std::string(to_string(spec.experiment)) +
                          " needs a Monte-Carlo configuration");
    }
    return *spec.mc;
}

/// Per-point configuration: same plan, seed derived from the point's position in the sweep.
mc::McConfig point_config(const mc::McConfig& base, std::uint64_t point) {
    mc::McConfig cfg = base;
    cfg.master_seed = sampler::derive_seed(base.master_seed, point);
    return cfg;
}

SweepTable make_table(const SweepSpec& spec, std::vector<std::string> header) {
    SweepTable t;
    t.header = std::move(header);
    t.metadata = {
        {"format", std::string(kFormatVersion)},
        {"experiment", std::string(to_string(spec.experiment))},
        {"grid", join(spec.grid)},
        {"dims", join(spec.dims)},
        {"c", fmt_g(spec.c, 17)},
        {"m", fmt_g(spec.m, 17)},
        {"cht_c", fmt_g(spec.cht_c, 17)},
    };
    if (spec.mc) {
        t.metadata.emplace_back("samples", std::to_string(spec.mc->samples));
        t.metadata.emplace_back("seed", std::to_string(spec.mc->master_seed));
        t.metadata.emplace_back("partitions", std::to_string(spec.mc->partitions));
        t.metadata.emplace_back("confidence", fmt_g(spec.mc->confidence, 17));
    }
    return t;
}

SweepTable fig1(const SweepSpec& spec) {
    const auto& base = require_mc(spec);
    SweepTable t = make_table(
        spec, {"ratio", "n", "mc_estimate", "mc_std_error", "lower_bound", "upper_bound"});
    std::uint64_t point = 0;
    for (std::size_t n : spec.dims) {
        const auto problem = ProblemSpec::sphere(n);
        for (double ratio : spec.grid) {
            const double sigma = ratio * std::sqrt(spec.c);
            const auto est = mc::estimate_success_probability(
                problem, Algorithm::Ep, {PlacementKind::SingleAxis, spec.c}, spec.c, sigma,
                mc::Target::Exploitation, point_config(base, point++));
            const auto b = bounds::p_sph_ep_bounds(spec.c, sigma, n);
            t.rows.push_back({ratio, static_cast<double>(n), est.mean, est.std_error, b.lower,
                              b.upper});
        }
    }
    return t;
}

SweepTable fig2(const SweepSpec& spec) {
    SweepTable t = make_table(spec, {"ratio", "ir_exact"});
    for (double ratio : spec.grid) {
        t.rows.push_back({ratio, bounds::ir_sph_1d(spec.c, ratio * std::sqrt(spec.c)).value()});
    }
    return t;
}

SweepTable fig3(const SweepSpec& spec) {
    const auto& base = require_mc(spec);
    SweepTable t =
        make_table(spec, {"ratio", "n", "ir_mc", "ir_mc_std_error", "ir_lower", "ir_upper"});
    std::uint64_t point = 0;
    for (std::size_t n : spec.dims) {
        const auto problem = ProblemSpec::sphere(n);
        for (double ratio : spec.grid) {
            const double sigma = ratio * std::sqrt(spec.c);
            const auto est = mc::estimate_improvement_rate(
                problem, Algorithm::Ep, {PlacementKind::SingleAxis, spec.c}, spec.c, sigma,
                mc::Target::Exploitation, point_config(base, point++));
            const auto b = bounds::ir_sph_ep_bounds(spec.c, sigma, n);
            t.rows.push_back({ratio, static_cast<double>(n), est.mean, est.std_error, b.lower,
                              b.upper});
        }
    }
    return t;
}

SweepTable dim_decay(const SweepSpec& spec) {
    SweepTable t = make_table(spec, {"ratio", "n", "p_sph_ep_upper", "p_sph_ep_lower",
                                     "ir_sph_ep_lower", "p_cht_ep_upper", "p_cht_ep_lower",
                                     "ir_cht_ep_lower", "fitted_a"});
    const double cht_root = std::sqrt(spec.cht_c);
    for (double ratio : spec.grid) {
        const double sigma = ratio * std::sqrt(spec.c);
        const double sigma_cht = ratio * cht_root;
        std::map<std::string, std::map<std::size_t, double>> families;
        std::vector<std::vector<double>> rows;
        for (std::size_t n : spec.dims) {
            const auto ps = bounds::p_sph_ep_bounds(spec.c, sigma, n);
            const auto is = bounds::ir_sph_ep_bounds(spec.c, sigma, n);
            const auto pc = bounds::p_cht_ep_bounds(spec.m, spec.cht_c, sigma_cht, n);
            const auto ic = bounds::ir_cht_ep_bounds(spec.m, spec.cht_c, sigma_cht, n);
            families["p_sph_ep_upper"][n] = ps.upper;
            families["p_sph_ep_lower"][n] = ps.lower;
            families["ir_sph_ep_lower"][n] = is.lower;
            families["p_cht_ep_upper"][n] = pc.upper;
            families["p_cht_ep_lower"][n] = pc.lower;
            families["ir_cht_ep_lower"][n] = ic.lower;
            rows.push_back({ratio, static_cast<double>(n), ps.upper, ps.lower, is.lower,
                            pc.upper, pc.lower, ic.lower});
        }
        double primary = std::nan("");
        for (const auto& [name, values] : families) {
            std::string summary;
            try {
                const auto fit = bounds::fit_decay_base(values);
                summary = fmt_g(fit.base_a, 12) + ";r2=" + fmt_g(fit.r2, 12);
                if (name == "p_sph_ep_upper") {
                    primary = fit.base_a;
                }
            } catch (const std::exception& e) {
                summary = std::string("unfit:") + e.what();
            }
            t.metadata.emplace_back("fit." + name + "@" + fmt_g(ratio, 12), summary);
        }
        for (auto& row : rows) {
            row.push_back(primary);
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

SweepTable rus_scaling(const SweepSpec& spec) {
    const auto& base = require_mc(spec);
    SweepTable t =
        make_table(spec, {"ratio", "n", "n_ir_mc", "n_ir_mc_std_error", "n_ir_exact"});
    std::uint64_t point = 0;
    for (double ratio : spec.grid) {
        for (std::size_t n : spec.dims) {
            const double dn = static_cast<double>(n);
            const double sigma = ratio * std::sqrt(spec.c / dn);
            const auto problem = ProblemSpec::sphere(n);
            const Placement placement{PlacementKind::EqualCoordinates, spec.c};
            const auto est =
                mc::estimate_improvement_rate(problem, Algorithm::Rus, placement, spec.c, sigma,
                                              mc::Target::Exploitation, point_config(base, point++));
            sampler::RngStream unused(0, 0);
            const auto x = sampler::place(placement, n, unused);
            const double exact = bounds::ir_sph_rus(x, spec.c, sigma).value();
            t.rows.push_back({ratio, dn, dn * est.mean, dn * est.std_error, dn * exact});
        }
    }
    return t;
}

SweepTable cht_opt_sigma(const SweepSpec& spec) {
    SweepTable t = make_table(spec, {"sigma", "p_cht_1d", "ir_cht_1d", "is_sigma_star_row"});
    const double star = bounds::optimal_sigma_cht_1d(spec.m, spec.cht_c);
    t.metadata.emplace_back("sigma_star", fmt_g(star, 17));
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < spec.grid.size(); ++i) {
        if (std::abs(spec.grid[i] - star) < std::abs(spec.grid[nearest] - star)) {
            nearest = i;
        }
    }
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const double sigma = spec.grid[i];
        const double ir = spec.cht_c < spec.m ? bounds::ir_cht_1d(spec.m, spec.cht_c, sigma).value()
                                              : std::nan("");
        t.rows.push_back({sigma, bounds::p_cht_1d(spec.m, spec.cht_c, sigma).value(), ir,
                          i == nearest ? 1.0 : 0.0});
    }
    return t;
}

SweepTable cht_zero_prob(const SweepSpec& spec) {
    const auto& base = require_mc(spec);
    SweepTable t = make_table(spec, {"ratio", "n", "rus_successes", "ep_successes", "samples",
                                     "rus_coordinate_feasible"});
    const double r2 = 2.0 * spec.m + 1.0 - spec.cht_c;
    std::uint64_t point = 0;
    for (double ratio : spec.grid) {
        for (std::size_t n : spec.dims) {
            const double dn = static_cast<double>(n);
            const double sigma = ratio * std::sqrt(spec.cht_c);
            const auto problem = ProblemSpec::cheating(n, spec.m);
            const Placement placement{PlacementKind::EqualCoordinates, r2};
            const auto rus = mc::estimate_success_probability(
                problem, Algorithm::Rus, placement, spec.cht_c, sigma,
                mc::Target::RightExploration, point_config(base, point++));
            const auto ep = mc::estimate_success_probability(
                problem, Algorithm::Ep, placement, spec.cht_c, sigma,
                mc::Target::RightExploration, point_config(base, point++));
            const bool feasible = bounds::rus_cht_coordinate_feasible(spec.m, spec.cht_c, r2 / dn);
            t.rows.push_back({ratio, dn, static_cast<double>(*rus.successes),
                              static_cast<double>(*ep.successes), static_cast<double>(base.samples),
                              feasible ? 1.0 : 0.0});
        }
    }
    return t;
}

std::vector<double> ratio_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 60; ++i) {
        g.push_back(0.05 * i);
    }
    return g;
}

}  // namespace

std::string_view to_string(Experiment e) noexcept {
    switch (e) {
    case Experiment::Fig1:
        return "fig1";
    case Experiment::Fig2:
        return "fig2";
    case Experiment::Fig3:
        return "fig3";
    case Experiment::DimDecay:
        return "dim-decay";
    case Experiment::RusScaling:
        return "rus-scaling";
    case Experiment::ChtOptSigma:
        return "cht-opt-sigma";
    case Experiment::ChtZeroProb:
        return "cht-zero-prob";
    }
    return "?";
}

Experiment parse_experiment(std::string_view name) {
    for (auto e : {Experiment::Fig1, Experiment::Fig2, Experiment::Fig3, Experiment::DimDecay,
                   Experiment::RusScaling, Experiment::ChtOptSigma, Experiment::ChtZeroProb}) {
        if (to_string(e) == name) {
            return e;
        }
    }
    throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

SweepSpec default_sweep(Experiment e) {
    SweepSpec s{e, ratio_grid(), {1, 2, 3, 5, 10}, mc::McConfig{}, "", 1.0, 10.0, 4.0};
    switch (e) {
    case Experiment::Fig1:
    case Experiment::Fig3:
        break;
    case Experiment::Fig2:
        s.grid.clear();
        for (int i = 1; i <= 300; ++i) {
            s.grid.push_back(0.01 * i);
        }
        s.dims = {1};
        s.mc.reset();
        break;
    case Experiment::DimDecay:
        s.grid = {1.0};
        s.dims = {2, 3, 4, 5, 6, 7, 8};
        s.mc.reset();
        break;
    case Experiment::RusScaling:
        s.grid = {0.88};
        s.dims = {1, 2, 4, 8, 16};
        break;
    case Experiment::ChtOptSigma:
        s.grid.clear();
        for (int i = 1; i <= 400; ++i) {
            s.grid.push_back(0.025 * i);
        }
        s.dims = {1};
        s.mc.reset();
        break;
    case Experiment::ChtZeroProb:
        s.grid = {1.0};
        s.dims = {1, 2, 4, 8};
        s.cht_c = 2.0;
        break;
    }
    return s;
}

void validate(const SweepSpec& spec) {
    if (spec.grid.empty() || spec.dims.empty()) {
        throw DomainError("sweep grid and dims must be nonempty");
    }
    if (!std::is_sorted(spec.grid.begin(), spec.grid.end(), std::less_equal<>{}) ||
        std::adjacent_find(spec.grid.begin(), spec.grid.end()) != spec.grid.end()) {
        throw DomainError("sweep grid must be strictly increasing");
    }
    if (std::any_of(spec.grid.begin(), spec.grid.end(), [](double v) { return !(v > 0.0); })) {
        throw DomainError("sweep grid values must be positive");
    }
    if (std::any_of(spec.dims.begin(), spec.dims.end(), [](std::size_t n) { return n < 1; })) {
        throw DomainError("sweep dims must be >= 1");
    }
}

SweepTable run_sweep(const SweepSpec& spec) {
    validate(spec);
    switch (spec.experiment) {
    case Experiment::Fig1:
        return fig1(spec);
    case Experiment::Fig2:
        return fig2(spec);
    case Experiment::Fig3:
        return fig3(spec);
    case Experiment::DimDecay:
        return dim_decay(spec);
    case Experiment::RusScaling:
        return rus_scaling(spec);
    case Experiment::ChtOptSigma:
        return cht_opt_sigma(spec);
    case Experiment::ChtZeroProb:
        return cht_zero_prob(spec);
    }
    throw DomainError("unknown experiment");
}

std::size_t SweepTable::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw std::out_of_range("no column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> SweepTable::column_values(std::string_view name) const {
    const std::size_t k = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back(r.at(k));
    }
    return out;
}

const std::string* SweepTable::meta(std::string_view key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

SweepSpec spec_from_metadata(const SweepTable& table) {
    auto need = [&](std::string_view key) -> const std::string& {
        const std::string* v = table.meta(key);
        if (!v) {
            throw std::invalid_argument("sweep metadata lacks '" + std::string(key) + "'");
        }
        return *v;
    };
    SweepSpec s;
    s.experiment = parse_experiment(need("experiment"));
    for (const auto& g : split(need("grid"), ';')) {
        s.grid.push_back(parse_double(g));
    }
    for (const auto& d : split(need("dims"), ';')) {
        s.dims.push_back(static_cast<std::size_t>(std::stoull(d)));
    }
    s.c = parse_double(need("c"));
    s.m = parse_double(need("m"));
    s.cht_c = parse_double(need("cht_c"));
    if (table.meta("samples")) {
        mc::McConfig cfg;
        cfg.samples = std::stoull(need("samples"));
        cfg.master_seed = std::stoull(need("seed"));
        cfg.partitions = std::stoull(need("partitions"));
        cfg.confidence = parse_double(need("confidence"));
        s.mc = cfg;
    }
    return s;
}

std::string format_csv(const SweepTable& table) {
    std::string out;
    for (const auto& [k, v] : table.metadata) {
        out += "# " + k + "=" + v + "\n";
    }
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out += (i ? "," : "") + table.header[i];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::logic_error("sweep table is not rectangular");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += fmt_g(row[i], 12);
        }
        out += "\n";
    }
    return out;
}

SweepTable parse_csv(std::string_view text) {
    SweepTable t;
    bool have_header = false;
    for (const auto& raw : split(text, '\n')) {
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            line.remove_prefix(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw std::invalid_argument("malformed metadata line: " + std::string(line));
            }
            t.metadata.emplace_back(std::string(line.substr(0, eq)),
                                    std::string(line.substr(eq + 1)));
            continue;
        }
        auto cells = split(line, ',');
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw std::invalid_argument("row has " + std::to_string(cells.size()) +
                                        " cells, header has " + std::to_string(t.header.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            row.push_back(parse_double(c));
        }
        t.rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw std::invalid_argument("CSV has no header row");
    }
    return t;
}

void emit_csv(const SweepTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << format_csv(table);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace eea::harness
