#pragma once

/// @file problems.hpp
/// @brief The sphere and cheating landscapes, their regions and the exploitation/exploration taxonomy.
///
/// Squared norms are used throughout: "‖x‖²" always means Σ xᵢ².

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace eea::problems {

enum class ProblemKind { Sphere, Cheating };

enum class RegionLabel { Absorbing, CheatingRegion, Infeasible };

enum class TransitionKind { Exploitation, RightExploration, MistakenExploration, Rejected };

std::string_view to_string(ProblemKind kind) noexcept;
std::string_view to_string(RegionLabel label) noexcept;
std::string_view to_string(TransitionKind kind) noexcept;

/// A benchmark instance. Construct through sphere() / cheating() so the invariants hold.
class ProblemSpec {
public:
    static ProblemSpec sphere(std::size_t n);
    /// Cheating problem with plateau boundary M: fitness ‖x‖² for ‖x‖² ≤ M,
    /// 2M + 1 − ‖x‖² for M < ‖x‖² ≤ 2M, infeasible beyond.
    static ProblemSpec cheating(std::size_t n, double m);

    ProblemKind kind() const noexcept { return kind_; }
    std::size_t dimension() const noexcept { return n_; }
    /// Plateau boundary M; empty for the sphere.
    std::optional<double> plateau() const noexcept { return m_; }
    /// M, throwing UnsupportedProblemError for the sphere.
    double m() const;

    bool operator==(const ProblemSpec&) const = default;

private:
    ProblemSpec(ProblemKind kind, std::size_t n, std::optional<double> m)
        : kind_(kind), n_(n), m_(m) {}

    ProblemKind kind_;
    std::size_t n_;
    std::optional<double> m_;
};

double norm2(std::span<const double> x) noexcept;

bool is_feasible(const ProblemSpec& spec, std::span<const double> x);

/// Fitness of x. Throws InfeasiblePointError outside the cheating ball ‖x‖² ≤ 2M.
double evaluate(const ProblemSpec& spec, std::span<const double> x);

/// Fitness as a function of ‖x‖² alone; both landscapes are radial.
double evaluate_norm2(const ProblemSpec& spec, double r2);

RegionLabel classify_point(const ProblemSpec& spec, std::span<const double> x);
RegionLabel classify_norm2(const ProblemSpec& spec, double r2) noexcept;

TransitionKind classify_transition(const ProblemSpec& spec, std::span<const double> x,
                                   std::span<const double> y, bool accepted);

/// Label-level form of classify_transition; no feasibility checking.
TransitionKind classify_labels(RegionLabel from, RegionLabel to, bool accepted) noexcept;

/// Squared radius of the ball a successful step lands in, given current fitness C:
/// C on the sphere, min(C, M) on the cheating problem.
double promising_region_radius2(const ProblemSpec& spec, double c);

}  // namespace eea::problems
