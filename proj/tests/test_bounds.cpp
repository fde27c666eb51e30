#include <cmath>
#include <map>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "eea/bounds.hpp"
#include "eea/errors.hpp"
#include "eea/numerics.hpp"
#include "oracles.hpp"

namespace {

using namespace eea;
using namespace eea::bounds;

// mpmath, 30 digits.
constexpr double kPhi2MinusHalf = 0.477249868051820793;
constexpr double kPhi1MinusHalf = 0.341344746068542949;
constexpr double kPhi1Mass = 0.682689492137085897;  // Φ(1) − Φ(−1)
constexpr double kRusSingleAxis = 0.124992082189541720;
constexpr double kRusLowerN4 = 0.119312467012955198;
constexpr double kEpUpperN2 = 0.325813470042788793;
constexpr double kEpLowerN2 = 0.177536156609519553;
constexpr double kIrRatio088 = 0.323860516004502903;
constexpr double kIrRatio2 = 0.230390137331558917;
constexpr double kSigmaStarM10C4 = 3.94598468126108415;
constexpr double kSigmaStarSynthetic = 1.47106851007471610;
constexpr double kIrChtM10C4S4 = 0.156519319753701039;

double u_of(double m, double c) { return std::sqrt(2 * m + 1 - c); }

TEST(PSph1d, Examples) {
    EXPECT_NEAR(p_sph_1d(1.0, 1.0).value(), kPhi2MinusHalf, 1e-15);
    EXPECT_NEAR(p_sph_1d(1.0, 2.0).value(), kPhi1MinusHalf, 1e-15);
    EXPECT_NEAR(p_sph_1d(1.0, 1e-8).value(), 0.5, 1e-15);
    EXPECT_EQ(p_sph_1d(1.0, 1.0).kind, BoundKind::Exact);
    EXPECT_THROW(p_sph_1d(0.0, 1.0), DomainError);
    EXPECT_THROW(p_sph_1d(1.0, -1.0), DomainError);
}

TEST(PSphRus, Examples) {
    const auto eq = p_sph_rus(std::vector<double>{0.5, 0.5, 0.5, 0.5}, 1.0, 0.5);
    EXPECT_NEAR(eq.exact.value(), kPhi2MinusHalf, 1e-15);
    EXPECT_NEAR(eq.sandwich.lower, kRusLowerN4, 1e-15);
    EXPECT_NEAR(eq.sandwich.upper, kPhi2MinusHalf, 1e-15);

    const auto axis = p_sph_rus(std::vector<double>{1.0, 0.0, 0.0, 0.0}, 1.0, 0.5);
    EXPECT_NEAR(axis.exact.value(), kRusSingleAxis, 1e-15);
    EXPECT_TRUE(axis.sandwich.contains(axis.exact.value()));

    const auto mirrored = p_sph_rus(std::vector<double>{-0.5, 0.5, -0.5, 0.5}, 1.0, 0.5);
    EXPECT_EQ(mirrored.exact.value(), eq.exact.value());

    const auto one = p_sph_rus(std::vector<double>{-2.0}, 4.0, 1.3);
    EXPECT_NEAR(one.exact.value(), p_sph_1d(4.0, 1.3).value(), 1e-15);
    EXPECT_NEAR(one.sandwich.lower, one.exact.value(), 1e-15);
    EXPECT_NEAR(one.sandwich.upper, one.exact.value(), 1e-15);

    EXPECT_THROW(p_sph_rus(std::vector<double>{1.0, 0.1}, 1.0, 0.5), InconsistentStateError);
    EXPECT_NO_THROW(p_sph_rus(std::vector<double>{1.0 + 1e-12, 0.0}, 1.0, 0.5));
}

TEST(PSphEp, Examples) {
    const auto b = p_sph_ep_bounds(1.0, 1.0, 2);
    EXPECT_NEAR(b.upper, kEpUpperN2, 1e-15);
    EXPECT_NEAR(b.lower, kEpLowerN2, 1e-15);
    EXPECT_NEAR(b.upper, kPhi2MinusHalf * kPhi1Mass, 1e-15);
    const auto b1 = p_sph_ep_bounds(3.0, 0.7, 1);
    EXPECT_EQ(b1.upper, p_sph_1d(3.0, 0.7).value());
    EXPECT_THROW(p_sph_ep_bounds(1.0, 1.0, 0), DomainError);
}

TEST(IrSph1d, Examples) {
    EXPECT_NEAR(ir_sph_1d(1.0, 0.88).value(), kIrRatio088, 1e-14);
    EXPECT_NEAR(ir_sph_1d(1.0, 0.88).value(), 0.3239, 5e-5);
    EXPECT_NEAR(ir_sph_1d(4.0, 4.0).value(), kIrRatio2, 1e-14);
    EXPECT_LT(ir_sph_1d(1.0, 1e-6).value(), 1e-5);
    EXPECT_GE(ir_sph_1d(1.0, 1e-6).value(), 0.0);
}

TEST(IrSphRus, Examples) {
    EXPECT_NEAR(ir_sph_rus(std::vector<double>{2.0}, 4.0, 1.1).value(),
                ir_sph_1d(4.0, 1.1).value(), 1e-15);
    for (std::size_t n : {2u, 4u, 8u, 16u}) {
        const double c = 2.5;
        std::vector<double> xs(n, std::sqrt(c / n));
        const double sigma = 0.88 * std::sqrt(c / n);
        EXPECT_NEAR(ir_sph_rus(xs, c, sigma).value(), kIrRatio088 / n, 1e-13) << n;
    }
}

TEST(IrSphEp, Examples) {
    const auto b1 = ir_sph_ep_bounds(2.0, 0.9, 1);
    EXPECT_NEAR(b1.lower, ir_sph_1d(2.0, 0.9).value(), 1e-14);
    for (std::size_t n = 1; n <= 12; ++n) {
        const double sigma = 0.88 / std::sqrt(static_cast<double>(n));
        EXPECT_NEAR(ir_sph_ep_i5(1.0, sigma, n), kIrRatio088, 1e-13);
    }
    const auto r = numerics::maximize_1d(
        [](double t) { return ir_sph_ep_i5(1.0, t / std::sqrt(5.0), 5); }, {0.01, 5.0});
    EXPECT_NEAR(r.arg, 0.88, 0.01);
    EXPECT_NEAR(r.value, 0.3239, 0.0005);
    for (double s = 0.01; s < 20; s *= 1.3) {
        for (std::size_t n = 1; n < 30; n += 4) {
            EXPECT_LE(ir_sph_ep_bounds(1.0, s, n).upper, 0.5);
        }
    }
}

TEST(PCht1d, Examples) {
    const double a = u_of(10, 4) - 2.0;
    const double b = u_of(10, 4) + 2.0;
    EXPECT_NEAR(a, 2.1231056256, 1e-9);
    EXPECT_NEAR(b, 6.1231056256, 1e-9);
    EXPECT_NEAR(p_cht_1d(10, 4, 3.946).value(), 0.234910679378209, 1e-12);
    EXPECT_NEAR(p_cht_1d(10, 4, 3.946).value(), 0.2349, 5e-5);
    EXPECT_LT(p_cht_1d(10, 4, 1e-3).value(), 1e-300);
    EXPECT_LT(p_cht_1d(10, 4, 1e7).value(), 1e-6);
    // C ≥ M: target radius √M.
    const double x = u_of(10, 10.5);
    EXPECT_NEAR(p_cht_1d(10, 10.5, 1.0).value(),
                oracle::ball_probability_1d(std::sqrt(10.0), x, 1.0), 1e-10);
    EXPECT_THROW(p_cht_1d(10, 11.5, 1.0), DomainError);
}

TEST(OptimalSigma, Examples) {
    EXPECT_NEAR(optimal_sigma(1.0, 2.0), kSigmaStarSynthetic, 1e-15);
    EXPECT_NEAR(optimal_sigma_cht_1d(10, 4), kSigmaStarM10C4, 1e-14);
    EXPECT_THROW(optimal_sigma(2.0, 1.0), DomainError);
    EXPECT_THROW(optimal_sigma(0.0, 1.0), DomainError);
    EXPECT_THROW(optimal_sigma_cht_1d(10, 11), DomainError);

    // Derivative of Φ(b/σ) − Φ(a/σ) changes sign from + to − at σ*.
    auto f = [](double s) { return p_cht_1d(10, 4, s).value(); };
    const double s = kSigmaStarM10C4;
    const double h = 1e-4;
    EXPECT_GT((f(s - h) - f(s - 2 * h)) / h, 0.0);
    EXPECT_LT((f(s + 2 * h) - f(s + h)) / h, 0.0);
}

TEST(OptimalSigma, InteriorMaximizerOfExplorationProbability) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> um(1.0, 30.0);
    std::uniform_real_distribution<double> uf(0.02, 0.98);
    for (int i = 0; i < 40; ++i) {
        const double m = um(rng);
        const double c = uf(rng) * m;
        const double star = optimal_sigma_cht_1d(m, c);
        const double a = u_of(m, c) - std::sqrt(c);
        const double b = u_of(m, c) + std::sqrt(c);
        EXPECT_GT(star, a);
        EXPECT_LT(star, b);
        const double scan = oracle::grid_argmax([&](double s) { return p_cht_1d(m, c, s).value(); },
                                                0.5 * a, 2 * b, 2e-4);
        EXPECT_NEAR(scan, star, 1e-3) << "M=" << m << " C=" << c;
    }
}

TEST(RusChtCoordinate, Examples) {
    EXPECT_FALSE(rus_cht_coordinate_feasible(10, 2, 4.75));
    EXPECT_TRUE(rus_cht_coordinate_feasible(10, 2, 19.0));
    // A coordinate with xᵢ² = 0 never helps: the others already carry 2M + 1 − C ≥ min(C, M).
    for (double c = 0.5; c <= 11.0; c += 0.25) {
        EXPECT_FALSE(rus_cht_coordinate_feasible(10, c, 0.0)) << c;
    }
    EXPECT_TRUE(rus_cht_coordinate_feasible(10, 10.5, 0.51));
    EXPECT_FALSE(rus_cht_coordinate_feasible(10, 10.5, 0.49));
    EXPECT_TRUE(rus_cht_coordinate_feasible(10, 4.0, 13.01));
    EXPECT_FALSE(rus_cht_coordinate_feasible(10, 4.0, 12.99));
}

TEST(RusChtCoordinate, AgreesWithBruteForceSearch) {
    // Is there a value yᵢ such that replacing xᵢ lands in ‖y‖² < min(C, M)?
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double m = 1.0 + 19.0 * unit(rng);
        const double c = (m + 1.0) * (0.01 + 0.98 * unit(rng));
        const double shell = 2 * m + 1 - c;
        const double xi2 = shell * unit(rng);
        const double others = shell - xi2;
        bool reachable = false;
        for (double yi = -5.0; yi <= 5.0 && !reachable; yi += 1e-3) {
            reachable = others + yi * yi < std::min(c, m);
        }
        const double margin = std::min(c, m) - others;
        if (std::abs(margin) > 1e-5) {
            EXPECT_EQ(rus_cht_coordinate_feasible(m, c, xi2), reachable)
                << "M=" << m << " C=" << c << " xi2=" << xi2;
        }
    }
}

TEST(PChtEp, Examples) {
    const double m = 10;
    const double c = 4;
    for (double s : {0.5, 1.0, 3.946, 9.0}) {
        const auto b1 = p_cht_ep_bounds(m, c, s, 1);
        const double p1 = p_cht_1d(m, c, s).value();
        EXPECT_NEAR(b1.upper, p1, 1e-15);
        EXPECT_NEAR(b1.lower, p1, 1e-15);
    }
    EXPECT_THROW(p_cht_ep_bounds(10, 10, 1.0, 2), DomainError);
    EXPECT_THROW(p_cht_ep_bounds(10, 10.5, 1.0, 2), DomainError);
}

TEST(IrCht1d, MatchesQuadratureOracle) {
    EXPECT_NEAR(ir_cht_1d(10, 4, 4).value(), kIrChtM10C4S4, 1e-13);
    EXPECT_NEAR(ir_cht_1d(10, 4, 4).value(), oracle::ball_improvement_1d(4, u_of(10, 4), 4), 1e-10);
    EXPECT_LT(ir_cht_1d(10, 4, 1e-3).value(), 1e-300);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double m = 1.0 + 29.0 * unit(rng);
        const double c = m * (0.02 + 0.96 * unit(rng));
        const double s = 0.05 + 10.0 * unit(rng);
        EXPECT_NEAR(ir_cht_1d(m, c, s).value(), oracle::ball_improvement_1d(c, u_of(m, c), s), 1e-9)
            << "M=" << m << " C=" << c << " sigma=" << s;
    }
}

TEST(IrChtEp, OneDimensionalBracketsExactRate) {
    for (double s : {0.3, 1.0, 4.0, 12.0}) {
        const auto b = ir_cht_ep_bounds(10, 4, s, 1);
        const double ir = ir_cht_1d(10, 4, s).value();
        EXPECT_NEAR(b.raw_lower, ir, 1e-14);
        EXPECT_GE(b.upper, ir);
    }
}

TEST(OneDimensionalForms, MatchQuadratureOnDenseGrid) {
    for (int i = 0; i < 50; ++i) {
        const double ratio = 0.05 + 0.06 * i;
        for (double c : {0.25, 1.0, 7.0}) {
            const double s = ratio * std::sqrt(c);
            const double x = std::sqrt(c);
            EXPECT_NEAR(p_sph_1d(c, s).value(), oracle::ball_probability_1d(x, x, s), 1e-10);
            EXPECT_NEAR(ir_sph_1d(c, s).value(), oracle::ball_improvement_1d(c, x, s), 1e-10);
            EXPECT_NEAR(ball_improvement_1d(c, 0.3 * x, s), oracle::ball_improvement_1d(c, 0.3 * x, s),
                        1e-10);
        }
        const double s = 0.2 + 0.2 * i;
        for (double c : {0.5, 4.0, 9.5, 10.0, 10.7}) {
            const double r = std::sqrt(std::min(c, 10.0));
            EXPECT_NEAR(p_cht_1d(10, c, s).value(), oracle::ball_probability_1d(r, u_of(10, c), s),
                        1e-10);
        }
    }
}

struct Families {
    BoundValue p_sph;
    BoundValue ir_sph;
    BoundValue p_cht;
    BoundValue ir_cht;
};

Families at(double c, double sigma, double m, double cht_c, std::size_t n) {
    return {p_sph_ep_bounds(c, sigma, n), ir_sph_ep_bounds(c, sigma, n),
            p_cht_ep_bounds(m, cht_c, sigma, n), ir_cht_ep_bounds(m, cht_c, sigma, n)};
}

TEST(Sandwich, ValidOnRandomGrid) {
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double c = 0.05 + 10.0 * unit(rng);
        const double sigma = std::sqrt(c) * (0.02 + 4.0 * unit(rng));
        const double m = 1.0 + 20.0 * unit(rng);
        const double cht_c = m * (0.02 + 0.96 * unit(rng));
        const std::size_t n = 1 + static_cast<std::size_t>(20 * unit(rng));
        const auto f = at(c, sigma, m, cht_c, n);
        for (const auto& b : {f.p_sph, f.ir_sph, f.p_cht, f.ir_cht}) {
            EXPECT_LE(b.lower, b.upper) << to_string(b.formula) << " C=" << c << " sigma=" << sigma
                                        << " M=" << m << " Ccht=" << cht_c << " n=" << n;
            EXPECT_GE(b.lower, 0.0);
            EXPECT_LE(b.upper, 1.0);
            EXPECT_LE(b.raw_lower, b.lower);
        }
        std::vector<double> xs(n);
        double r2 = 0.0;
        for (auto& v : xs) {
            v = unit(rng) - 0.5;
            r2 += v * v;
        }
        const auto rus = p_sph_rus(xs, r2, sigma);
        EXPECT_TRUE(rus.sandwich.contains(rus.exact.value(), 1e-15));
    }
}

TEST(Sandwich, ExactAtDimensionOne) {
    for (double s : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const auto f = at(2.0, s, 10.0, 4.0, 1);
        EXPECT_NEAR(f.p_sph.upper, p_sph_1d(2.0, s).value(), 1e-12);
        EXPECT_NEAR(f.p_sph.lower, p_sph_1d(2.0, s).value(), 1e-12);
        EXPECT_NEAR(f.ir_sph.raw_lower, ir_sph_1d(2.0, s).value(), 1e-12);
        EXPECT_NEAR(f.p_cht.upper, p_cht_1d(10, 4, s).value(), 1e-12);
        EXPECT_NEAR(f.p_cht.lower, p_cht_1d(10, 4, s).value(), 1e-12);
        EXPECT_NEAR(f.ir_cht.raw_lower, ir_cht_1d(10, 4, s).value(), 1e-12);
    }
}

TEST(Sandwich, StrictlyDecreasingInDimension) {
    for (double ratio : {0.3, 0.5, 1.0, 2.0}) {
        const double sigma = ratio;  // C = 1
        auto prev = at(1.0, sigma, 10.0, 4.0, 1);
        for (std::size_t n = 2; n <= 12; ++n) {
            const auto cur = at(1.0, sigma, 10.0, 4.0, n);
            EXPECT_LT(cur.p_sph.upper, prev.p_sph.upper) << ratio << " " << n;
            EXPECT_LT(cur.p_sph.lower, prev.p_sph.lower) << ratio << " " << n;
            EXPECT_LT(cur.ir_sph.upper, prev.ir_sph.upper) << ratio << " " << n;
            EXPECT_LT(cur.p_cht.upper, prev.p_cht.upper) << ratio << " " << n;
            EXPECT_LT(cur.p_cht.lower, prev.p_cht.lower) << ratio << " " << n;
            EXPECT_LT(cur.ir_cht.upper, prev.ir_cht.upper) << ratio << " " << n;
            if (prev.ir_sph.lower > 0.0) {
                EXPECT_LT(cur.ir_sph.lower, prev.ir_sph.lower) << ratio << " " << n;
            }
            if (prev.ir_cht.lower > 0.0) {
                EXPECT_LT(cur.ir_cht.lower, prev.ir_cht.lower) << ratio << " " << n;
            }
            prev = cur;
        }
    }
}

TEST(Sandwich, ExploitationProbabilityIncreasesAsSigmaShrinks) {
    for (std::size_t n : {1u, 2u, 5u, 10u}) {
        double prev_p = 0.0;
        double prev_lo = 0.0;
        double prev_hi = 0.0;
        for (double ratio = 3.0; ratio >= 0.3; ratio -= 0.05) {
            const auto b = p_sph_ep_bounds(1.0, ratio, n);
            const double p = p_sph_1d(1.0, ratio).value();
            EXPECT_GT(p, prev_p);
            EXPECT_GT(b.lower, prev_lo);
            EXPECT_GT(b.upper, prev_hi);
            prev_p = p;
            prev_lo = b.lower;
            prev_hi = b.upper;
        }
    }
}

TEST(DecayFit, GeometricUpperBound) {
    std::map<std::size_t, double> values;
    for (std::size_t n = 2; n <= 8; ++n) {
        values[n] = p_sph_ep_bounds(1.0, 1.0, n).upper;
    }
    const auto fit = fit_decay_base(values);
    EXPECT_NEAR(fit.base_a, kPhi1Mass, 1e-12);
    EXPECT_GT(fit.r2, 0.9999);
    EXPECT_EQ(fit.dims, (std::vector<std::size_t>{2, 3, 4, 5, 6, 7, 8}));
    EXPECT_NEAR(fit_decay_base(values, DecayOffset::N).base_a, kPhi1Mass, 1e-12);
}

TEST(DecayFit, CheatingLowerBound) {
    std::map<std::size_t, double> values;
    for (std::size_t n = 1; n <= 8; ++n) {
        values[n] = p_cht_ep_bounds(10, 4, 3.0, n).lower;
    }
    const auto fit = fit_decay_base(values, DecayOffset::N);
    EXPECT_GT(fit.base_a, 0.0);
    EXPECT_LT(fit.base_a, 1.0);
}

TEST(DecayFit, Errors) {
    try {
        fit_decay_base({{1, 0.5}, {2, 0.5}, {3, 0.5}, {4, 0.5}});
        FAIL() << "expected DecayFitError";
    } catch (const DecayFitError& e) {
        EXPECT_NEAR(e.base(), 1.0, 1e-12);
    }
    EXPECT_THROW(fit_decay_base({{1, 0.5}, {2, 0.25}, {3, 0.125}}), DomainError);
    EXPECT_THROW(fit_decay_base({{1, 0.5}, {2, 0.25}, {3, 0.0}, {4, 0.1}}), DomainError);
}

TEST(Names, FormulaIds) {
    EXPECT_EQ(to_string(FormulaId::IrChtEp), "ir-cht-ep");
    EXPECT_EQ(to_string(FormulaId::PSph1d), "p-sph-1d");
    EXPECT_EQ(to_string(BoundKind::Interval), "interval");
}

}  // namespace
