#pragma once

/// @file harness.hpp
/// @brief Sweep experiments that regenerate the figure trends and scaling claims as CSV tables.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eea/montecarlo.hpp"

namespace eea::harness {

enum class Experiment { Fig1, Fig2, Fig3, DimDecay, RusScaling, ChtOptSigma, ChtZeroProb };

std::string_view to_string(Experiment e) noexcept;
Experiment parse_experiment(std::string_view name);

struct SweepSpec {
    Experiment experiment;
    /// Control values: σ/√C ratios (σ itself for ChtOptSigma). Strictly increasing.
    std::vector<double> grid;
    std::vector<std::size_t> dims;
    std::optional<mc::McConfig> mc;
    std::string output_path;
    double c = 1.0;       // sphere fitness level
    double m = 10.0;      // cheating plateau
    double cht_c = 4.0;   // cheating fitness level (C < M branch)
};

/// Declared defaults: ratios 0.05..3.0 step 0.05, n ∈ {1, 2, 3, 5, 10}, 10⁶ samples per point.
SweepSpec default_sweep(Experiment e);

void validate(const SweepSpec& spec);

struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    /// Column index by name; throws std::out_of_range.
    std::size_t column(std::string_view name) const;
    std::vector<double> column_values(std::string_view name) const;
    const std::string* meta(std::string_view key) const;
};

/// Runs the experiment. Row order follows grid/dims order.
SweepTable run_sweep(const SweepSpec& spec);

/// Rebuilds the SweepSpec echoed into a table's metadata.
SweepSpec spec_from_metadata(const SweepTable& table);

/// '#'-prefixed "key=value" metadata lines, a header row, then one line per row with
/// values printed to 12 significant digits.
std::string format_csv(const SweepTable& table);
SweepTable parse_csv(std::string_view text);

/// Writes format_csv(table) to `path`; throws IoError with the path on failure.
void emit_csv(const SweepTable& table, const std::string& path);

}  // namespace eea::harness
