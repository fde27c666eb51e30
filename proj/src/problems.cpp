#include "eea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eea/errors.hpp"

namespace eea::problems {

std::string_view to_string(ProblemKind kind) noexcept {
    switch (kind) {
    case ProblemKind::Sphere:
        return "sphere";
    case ProblemKind::Cheating:
        return "cheating";
    }
    return "?";
}

std::string_view to_string(RegionLabel label) noexcept {
    switch (label) {
    case RegionLabel::Absorbing:
        return "absorbing";
    case RegionLabel::CheatingRegion:
        return "cheating-region";
    case RegionLabel::Infeasible:
        return "infeasible";
    }
    return "?";
}

std::string_view to_string(TransitionKind kind) noexcept {
    switch (kind) {
    case TransitionKind::Exploitation:
        return "exploitation";
    case TransitionKind::RightExploration:
        return "right-exploration";
    case TransitionKind::MistakenExploration:
        return "mistaken-exploration";
    case TransitionKind::Rejected:
        return "rejected";
    }
    return "?";
}

ProblemSpec ProblemSpec::sphere(std::size_t n) {
    if (n < 1) {
        throw DomainError("ProblemSpec: dimension must be >= 1");
    }
    return {ProblemKind::Sphere, n, std::nullopt};
}

ProblemSpec ProblemSpec::cheating(std::size_t n, double m) {
    if (n < 1) {
        throw DomainError("ProblemSpec: dimension must be >= 1");
    }
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw DomainError("ProblemSpec: cheating plateau M must be finite and > 0");
    }
    return {ProblemKind::Cheating, n, m};
}

double ProblemSpec::m() const {
    if (!m_) {
        throw UnsupportedProblemError("the sphere problem has no plateau parameter M");
    }
    return *m_;
}

double norm2(std::span<const double> x) noexcept {
    double s = 0.0;
    for (double v : x) {
        s += v * v;
    }
    return s;
}

namespace {

void require_dimension(const ProblemSpec& spec, std::span<const double> x) {
    if (x.size() != spec.dimension()) {
        throw DomainError("point has dimension " + std::to_string(x.size()) + ", problem has " +
                          std::to_string(spec.dimension()));
    }
}

}  // namespace

bool is_feasible(const ProblemSpec& spec, std::span<const double> x) {
    require_dimension(spec, x);
    return classify_norm2(spec, norm2(x)) != RegionLabel::Infeasible;
}

double evaluate_norm2(const ProblemSpec& spec, double r2) {
    if (spec.kind() == ProblemKind::Sphere) {
        return r2;
    }
    const double m = *spec.plateau();
    if (r2 <= m) {
        return r2;
    }
    if (r2 <= 2.0 * m) {
        return 2.0 * m + 1.0 - r2;
    }
    throw InfeasiblePointError("point with ||x||^2 = " + std::to_string(r2) +
                               " lies outside the cheating domain ||x||^2 <= 2M = " +
                               std::to_string(2.0 * m));
}

double evaluate(const ProblemSpec& spec, std::span<const double> x) {
    require_dimension(spec, x);
    return evaluate_norm2(spec, norm2(x));
}

RegionLabel classify_norm2(const ProblemSpec& spec, double r2) noexcept {
    if (spec.kind() == ProblemKind::Sphere) {
        return RegionLabel::Absorbing;
    }
    const double m = *spec.plateau();
    if (r2 <= m) {
        return RegionLabel::Absorbing;
    }
    if (r2 <= 2.0 * m) {
        return RegionLabel::CheatingRegion;
    }
    return RegionLabel::Infeasible;
}

RegionLabel classify_point(const ProblemSpec& spec, std::span<const double> x) {
    require_dimension(spec, x);
    return classify_norm2(spec, norm2(x));
}

TransitionKind classify_labels(RegionLabel from, RegionLabel to, bool accepted) noexcept {
    if (!accepted) {
        return TransitionKind::Rejected;
    }
    if (from == to) {
        return TransitionKind::Exploitation;
    }
    if (from == RegionLabel::CheatingRegion && to == RegionLabel::Absorbing) {
        return TransitionKind::RightExploration;
    }
    return TransitionKind::MistakenExploration;
}

TransitionKind classify_transition(const ProblemSpec& spec, std::span<const double> x,
                                   std::span<const double> y, bool accepted) {
    const RegionLabel from = classify_point(spec, x);
    const RegionLabel to = classify_point(spec, y);
    if (from == RegionLabel::Infeasible || to == RegionLabel::Infeasible) {
        throw InfeasiblePointError("classify_transition: both points must be feasible");
    }
    return classify_labels(from, to, accepted);
}

double promising_region_radius2(const ProblemSpec& spec, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw DomainError("promising_region_radius2: C must be finite and > 0");
    }
    if (spec.kind() == ProblemKind::Sphere) {
        return c;
    }
    const double m = *spec.plateau();
    if (c > m + 1.0) {
        throw DomainError("promising_region_radius2: cheating fitness C cannot exceed M + 1");
    }
    return std::min(c, m);
}

}  // namespace eea::problems
