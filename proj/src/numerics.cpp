#include "eea/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "eea/errors.hpp"

namespace eea::numerics {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;  // 1/√(2π)
constexpr double kSqrt2Pi = 2.506628274631000502415765284811;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + ": argument must be finite");
    }
}

struct Segment {
    double a;
    double b;
    double estimate;
    double error;

    bool operator<(const Segment& other) const noexcept { return error < other.error; }
};

Segment kronrod_segment(const std::function<double(double)>& f, double a, double b) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    const auto& nodes = Rule::abscissa();
    const auto& kronrod_w = Rule::weights();
    const auto& gauss_w = boost::math::quadrature::gauss<double, 7>::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    auto eval = [&](double x) {
        const double y = f(x);
        if (!std::isfinite(y)) {
            throw EvaluationError("integrand is not finite at x = " + std::to_string(x), x);
        }
        return y;
    };

    // Kronrod node 0 is the center; even indices coincide with the 7-point Gauss nodes.
    const double f0 = eval(center);
    double kronrod = f0 * kronrod_w[0];
    double gauss = f0 * gauss_w[0];
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double dx = half * nodes[i];
        const double pair = eval(center - dx) + eval(center + dx);
        kronrod += pair * kronrod_w[i];
        if (i % 2 == 0) {
            gauss += pair * gauss_w[i / 2];
        }
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double gaussian_pdf(double z) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double gaussian_cdf(double z) {
    require_finite(z, "gaussian_cdf");
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double gaussian_mass(double a, double b) {
    require_finite(a, "gaussian_mass");
    require_finite(b, "gaussian_mass");
    constexpr double k = 1.0 / std::numbers::sqrt2;
    if (a >= 0.0) {
        return 0.5 * (std::erfc(a * k) - std::erfc(b * k));
    }
    if (b <= 0.0) {
        return 0.5 * (std::erfc(-b * k) - std::erfc(-a * k));
    }
    return 0.5 * (std::erf(b * k) - std::erf(a * k));
}

double gaussian_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("gaussian_quantile: p must lie in (0, 1)");
    }
    return boost::math::quantile(boost::math::normal_distribution<double>{}, p);
}

double psi(double z) {
    require_finite(z, "psi");
    if (z < 0.0) {
        throw DomainError("psi: z must be non-negative");
    }
    // Φ(√z) − ½ written through erf to keep full relative precision near 0.
    return kSqrt2Pi * 0.5 * std::erf(std::sqrt(z) / std::numbers::sqrt2);
}

MomentIntegrals moment_integrals(double a, double b) {
    require_finite(a, "moment_integrals");
    require_finite(b, "moment_integrals");
    const double ea = std::exp(-0.5 * a * a);
    const double eb = std::exp(-0.5 * b * b);
    const double i2 = gaussian_mass(a, b);
    const double i1 = -kInvSqrt2Pi * (b * eb - a * ea) + i2;
    const double i3 = -kInvSqrt2Pi * (eb - ea);
    return {i1, i2, i3};
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || spec.max_subdivisions < 1) {
        throw DomainError("integrate: abs_tol must be > 0 and max_subdivisions >= 1");
    }
    require_finite(a, "integrate");
    require_finite(b, "integrate");
    if (a == b) {
        return 0.0;
    }
    if (a > b) {
        return -integrate(f, b, a, spec);
    }

    std::priority_queue<Segment> work;
    work.push(kronrod_segment(f, a, b));
    double total = work.top().estimate;
    double error = work.top().error;
    std::size_t subdivisions = 1;

    while (error > spec.abs_tol) {
        if (subdivisions >= spec.max_subdivisions) {
            throw AccuracyError("integrate: subdivision budget exhausted, achieved error " +
                                    std::to_string(error),
                                error);
        }
        const Segment worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            throw AccuracyError("integrate: interval collapsed below machine resolution", error);
        }
        const Segment left = kronrod_segment(f, worst.a, mid);
        const Segment right = kronrod_segment(f, mid, worst.b);
        total += left.estimate + right.estimate - worst.estimate;
        error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
        ++subdivisions;
    }

    // Re-sum so the result does not carry the running-update rounding.
    total = 0.0;
    error = 0.0;
    while (!work.empty()) {
        total += work.top().estimate;
        error += work.top().error;
        work.pop();
    }
    return total;
}

ArgmaxResult maximize_1d(const std::function<double(double)>& objective, Interval bracket,
                         double tol, std::size_t grid_points) {
    if (!(bracket.lo < bracket.hi) || !std::isfinite(bracket.lo) || !std::isfinite(bracket.hi)) {
        throw DomainError("maximize_1d: bracket must be a nonempty finite interval");
    }
    if (!(tol > 0.0)) {
        throw DomainError("maximize_1d: tol must be positive");
    }
    grid_points = std::max<std::size_t>(grid_points, 1000);

    auto eval = [&](double x) {
        const double y = objective(x);
        if (!std::isfinite(y)) {
            throw EvaluationError("objective is not finite at x = " + std::to_string(x), x);
        }
        return y;
    };

    const double step = bracket.width() / static_cast<double>(grid_points - 1);
    auto grid_x = [&](std::size_t i) {
        return i + 1 == grid_points ? bracket.hi : bracket.lo + step * static_cast<double>(i);
    };

    std::size_t best = 0;
    double best_value = eval(grid_x(0));
    for (std::size_t i = 1; i < grid_points; ++i) {
        const double v = eval(grid_x(i));
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }

    double lo = grid_x(best == 0 ? 0 : best - 1);
    double hi = grid_x(std::min(best + 1, grid_points - 1));

    constexpr double kInvPhi = 0.618033988749894848204586834366;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = eval(x1);
    double f2 = eval(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = eval(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = eval(x1);
        }
        if (x1 >= x2) {
            break;
        }
    }

    const double arg = 0.5 * (lo + hi);
    const double value = eval(arg);
    if (value >= best_value) {
        return {arg, value, bracket};
    }
    return {grid_x(best), best_value, bracket};
}

}  // namespace eea::numerics
