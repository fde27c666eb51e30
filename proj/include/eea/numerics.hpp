#pragma once

/// @file numerics.hpp
/// @brief Special functions, adaptive quadrature and 1-D maximization shared by the bound formulas.
///
/// Everything here is a pure function of its arguments and safe to call concurrently.

#include <cstddef>
#include <functional>

namespace eea::numerics {

struct Interval {
    double lo;
    double hi;

    double width() const noexcept { return hi - lo; }
    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

struct QuadratureSpec {
    double abs_tol = 1e-10;
    std::size_t max_subdivisions = 2000;
};

struct ArgmaxResult {
    double arg;
    double value;
    Interval bracket;
};

/// I₁ = ∫ z² φ(z) dz, I₂ = ∫ φ(z) dz, I₃ = ∫ z φ(z) dz over [a, b] (signed when a > b).
struct MomentIntegrals {
    double i1;
    double i2;
    double i3;
};

/// Standard normal density.
double gaussian_pdf(double z) noexcept;

/// Standard normal CDF Φ(z), computed from erfc. Throws DomainError on non-finite input.
double gaussian_cdf(double z);

/// Φ(b) − Φ(a), evaluated on the tail that keeps relative precision.
double gaussian_mass(double a, double b);

/// Inverse of Φ for p in (0, 1).
double gaussian_quantile(double p);

/// Ψ(z) = √(2π)(Φ(√z) − ½), z ≥ 0. Strictly increasing and concave on (0, ∞),
/// normalized so that Φ(2x/σ) − ½ = Ψ(4x²/σ²)/√(2π).
double psi(double z);

MomentIntegrals moment_integrals(double a, double b);

/// Adaptive Gauss–Kronrod (7/15) quadrature with a global error budget.
///
/// Subintervals with the largest local error estimate are bisected until the summed
/// estimate drops below spec.abs_tol. Throws AccuracyError when the subdivision budget
/// runs out and EvaluationError when f returns a non-finite value.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Locates a maximizer of `objective` on `bracket`: a uniform scan over `grid_points`
/// abscissae picks the best cell, then golden-section search refines inside the two
/// neighbouring cells until the bracket is narrower than `tol`. Deterministic.
ArgmaxResult maximize_1d(const std::function<double(double)>& objective, Interval bracket,
                         double tol = 1e-9, std::size_t grid_points = 2001);

}  // namespace eea::numerics
