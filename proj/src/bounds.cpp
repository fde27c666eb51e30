#include "eea/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "eea/errors.hpp"
#include "eea/numerics.hpp"
#include "eea/problems.hpp"

namespace eea::bounds {

using numerics::gaussian_cdf;
using numerics::gaussian_mass;

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite and > 0");
    }
}

void require_dimension(std::size_t n) {
    if (n < 1) {
        throw DomainError("dimension n must be >= 1");
    }
}

/// Φ(z) − ½ without cancellation.
double half_mass(double z) { return 0.5 * std::erf(z / std::numbers::sqrt2); }

void require_shell(std::span<const double> xs, double c) {
    require_positive(c, "C");
    if (xs.empty()) {
        throw DomainError("xs must be nonempty");
    }
    const double r2 = problems::norm2(xs);
    if (std::abs(r2 - c) > 1e-9 * c) {
        throw InconsistentStateError("point has ||x||^2 = " + std::to_string(r2) +
                                     ", expected shell C = " + std::to_string(c));
    }
}

/// x = √(2M+1−C) for a cheating-region point with fitness C.
double cheating_offset(double m, double c) {
    require_positive(m, "M");
    require_positive(c, "C");
    if (c > m + 1.0) {
        throw DomainError("cheating fitness C must not exceed M + 1");
    }
    return std::sqrt(2.0 * m + 1.0 - c);
}

void require_analyzed_branch(double m, double c) {
    require_positive(m, "M");
    require_positive(c, "C");
    if (!(c < m)) {
        throw DomainError("this cheating bound is derived for 0 < C < M");
    }
}

}  // namespace

std::string_view to_string(FormulaId id) noexcept {
    switch (id) {
    case FormulaId::PSph1d:
        return "p-sph-1d";
    case FormulaId::PSphRus:
        return "p-sph-rus";
    case FormulaId::PSphEp:
        return "p-sph-ep";
    case FormulaId::IrSph1d:
        return "ir-sph-1d";
    case FormulaId::IrSphRus:
        return "ir-sph-rus";
    case FormulaId::IrSphEp:
        return "ir-sph-ep";
    case FormulaId::PCht1d:
        return "p-cht-1d";
    case FormulaId::PChtEp:
        return "p-cht-ep";
    case FormulaId::IrCht1d:
        return "ir-cht-1d";
    case FormulaId::IrChtEp:
        return "ir-cht-ep";
    }
    return "?";
}

std::string_view to_string(BoundKind kind) noexcept {
    switch (kind) {
    case BoundKind::Exact:
        return "exact";
    case BoundKind::Upper:
        return "upper";
    case BoundKind::Lower:
        return "lower";
    case BoundKind::Interval:
        return "interval";
    }
    return "?";
}

BoundValue BoundValue::exact(FormulaId id, double v) noexcept {
    const double clamped = std::max(0.0, v);
    return {id, BoundKind::Exact, clamped, clamped, v};
}

BoundValue BoundValue::interval(FormulaId id, double raw_lower, double upper) noexcept {
    return {id, BoundKind::Interval, std::max(0.0, raw_lower), upper, raw_lower};
}

BoundValue p_sph_1d(double c, double sigma) {
    require_positive(c, "C");
    require_positive(sigma, "sigma");
    return BoundValue::exact(FormulaId::PSph1d, half_mass(2.0 * std::sqrt(c) / sigma));
}

RusProbability p_sph_rus(std::span<const double> xs, double c, double sigma) {
    require_shell(xs, c);
    require_positive(sigma, "sigma");
    const auto n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double xi : xs) {
        sum += half_mass(2.0 * std::abs(xi) / sigma);
    }
    const double upper = half_mass(2.0 * std::sqrt(c) / (sigma * std::sqrt(n)));
    return {BoundValue::exact(FormulaId::PSphRus, sum / n),
            BoundValue::interval(FormulaId::PSphRus, upper / n, upper)};
}

BoundValue p_sph_ep_bounds(double c, double sigma, std::size_t n) {
    require_positive(c, "C");
    require_positive(sigma, "sigma");
    require_dimension(n);
    const double sc = std::sqrt(c);
    const double dn = static_cast<double>(n);
    const double upper = half_mass(2.0 * sc / sigma) *
                         std::pow(gaussian_mass(-sc / sigma, sc / sigma), dn - 1.0);
    const double lower = std::pow(half_mass(2.0 * sc / (sigma * std::sqrt(dn))), dn);
    return BoundValue::interval(FormulaId::PSphEp, lower, upper);
}

BoundValue ir_sph_1d(double c, double sigma) {
    require_positive(c, "C");
    require_positive(sigma, "sigma");
    const double sc = std::sqrt(c);
    const double v = 2.0 * sigma * kInvSqrt2Pi / sc -
                     (sigma * sigma / c) * (0.5 - gaussian_cdf(-2.0 * sc / sigma));
    return BoundValue::exact(FormulaId::IrSph1d, v);
}

BoundValue ir_sph_rus(std::span<const double> xs, double c, double sigma) {
    require_shell(xs, c);
    require_positive(sigma, "sigma");
    // Σ (xᵢ²/C)·IR^(1)(xᵢ²) = (1/C) Σ E[improvement | coordinate i]; summing the expected
    // improvements directly keeps xᵢ = 0 terms well defined.
    double sum = 0.0;
    for (double xi : xs) {
        const double ax = std::abs(xi);
        sum += 2.0 * sigma * ax * kInvSqrt2Pi - sigma * sigma * half_mass(2.0 * ax / sigma);
    }
    return BoundValue::exact(FormulaId::IrSphRus, sum / (static_cast<double>(xs.size()) * c));
}

double ir_sph_ep_i5(double c, double sigma, std::size_t n) {
    require_dimension(n);
    return ir_sph_1d(c / static_cast<double>(n), sigma).raw_lower;
}

BoundValue ir_sph_ep_bounds(double c, double sigma, std::size_t n) {
    const BoundValue p = p_sph_ep_bounds(c, sigma, n);
    const double dn = static_cast<double>(n);
    const double i4 = std::pow(half_mass(2.0 * std::sqrt(c) / (sigma * std::sqrt(dn))), dn - 1.0);
    const double i5 = ir_sph_ep_i5(c, sigma, n);
    return BoundValue::interval(FormulaId::IrSphEp, i4 * i5, p.upper);
}

BoundValue p_cht_1d(double m, double c, double sigma) {
    const double x = cheating_offset(m, c);
    require_positive(sigma, "sigma");
    const double r = std::sqrt(std::min(c, m));
    return BoundValue::exact(FormulaId::PCht1d, gaussian_mass((x - r) / sigma, (x + r) / sigma));
}

double optimal_sigma(double a, double b) {
    if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
        throw DomainError("optimal_sigma requires 0 < a < b");
    }
    return std::sqrt((b * b - a * a) / (2.0 * std::log(b / a)));
}

double optimal_sigma_cht_1d(double m, double c) {
    const double x = cheating_offset(m, c);
    const double r = std::sqrt(std::min(c, m));
    if (!(x > r)) {
        throw DomainError("optimal_sigma_cht_1d requires C < M + 1 so the target excludes x");
    }
    return optimal_sigma(x - r, x + r);
}

bool rus_cht_coordinate_feasible(double m, double c, double xi2) {
    const double others = 2.0 * m + 1.0 - c - xi2;  // Σ_{j≠i} xⱼ²
    return std::min(c, m) - others > 0.0;
}

BoundValue p_cht_ep_bounds(double m, double c, double sigma, std::size_t n) {
    require_analyzed_branch(m, c);
    require_positive(sigma, "sigma");
    require_dimension(n);
    const double u = cheating_offset(m, c);
    const double sc = std::sqrt(c);
    const double dn = static_cast<double>(n);
    const double s_n = sigma * std::sqrt(dn);
    const double upper = gaussian_mass((u - sc) / sigma, (u + sc) / sigma) *
                         std::pow(gaussian_mass(-sc / sigma, sc / sigma), dn - 1.0);
    const double lower = std::pow(gaussian_mass((u - sc) / s_n, (u + sc) / s_n), dn);
    return BoundValue::interval(FormulaId::PChtEp, lower, upper);
}

double ball_improvement_1d(double c2, double x, double sigma) {
    require_positive(c2, "c2");
    require_positive(sigma, "sigma");
    x = std::abs(x);
    const double sc = std::sqrt(c2);
    const double mass = gaussian_mass((x - sc) / sigma, (x + sc) / sigma);
    const double two_var = 2.0 * sigma * sigma;
    const double near = sigma * (sc + x) * kInvSqrt2Pi * std::exp(-(sc - x) * (sc - x) / two_var);
    const double far = sigma * (sc - x) * kInvSqrt2Pi * std::exp(-(sc + x) * (sc + x) / two_var);
    return (1.0 - (sigma * sigma + x * x) / c2) * mass + (near + far) / c2;
}

BoundValue ir_cht_1d(double m, double c, double sigma) {
    require_analyzed_branch(m, c);
    const double u = cheating_offset(m, c);
    return BoundValue::exact(FormulaId::IrCht1d, ball_improvement_1d(c, u, sigma));
}

BoundValue ir_cht_ep_bounds(double m, double c, double sigma, std::size_t n) {
    const BoundValue p = p_cht_ep_bounds(m, c, sigma, n);
    const double u = cheating_offset(m, c);
    const double dn = static_cast<double>(n);
    const double sc = std::sqrt(c);
    const double s_n = sigma * std::sqrt(dn);
    const double d = gaussian_mass((u - sc) / s_n, (u + sc) / s_n);
    const double per_coordinate = ball_improvement_1d(c / dn, u / std::sqrt(dn), sigma);
    return BoundValue::interval(FormulaId::IrChtEp, std::pow(d, dn - 1.0) * per_coordinate,
                                p.upper);
}

ScalingFit fit_decay_base(const std::map<std::size_t, double>& values, DecayOffset offset) {
    if (values.size() < 4) {
        throw DomainError("fit_decay_base needs values at >= 4 distinct dimensions");
    }
    const double shift = offset == DecayOffset::NMinus1 ? 1.0 : 0.0;
    std::vector<double> xs;
    std::vector<double> ys;
    ScalingFit fit{0.0, 0.0, {}};
    for (const auto& [n, v] : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError("fit_decay_base: value at n = " + std::to_string(n) +
                              " is not positive");
        }
        xs.push_back(static_cast<double>(n) - shift);
        ys.push_back(std::log(v));
        fit.dims.push_back(n);
    }
    const double k = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    fit.base_a = std::exp(slope);
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    if (!(fit.base_a > 0.0 && fit.base_a < 1.0)) {
        throw DecayFitError("fitted decay base " + std::to_string(fit.base_a) +
                                " lies outside (0, 1)",
                            fit.base_a);
    }
    return fit;
}

}  // namespace eea::bounds
