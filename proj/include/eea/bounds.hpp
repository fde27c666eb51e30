#pragma once

/// @file bounds.hpp
/// @brief Closed-form success probabilities, one-step improvement rates and their
/// sandwich bounds for (1+1)RUS / (1+1)EP on the sphere and cheating problems.
///
/// Conventions shared by every function:
///  - C is the current fitness, σ the mutation standard deviation, n the dimension and
///    M the cheating plateau boundary.
///  - Improvement rates are relative to C: E[(C − f(y))⁺ restricted to the target] / C.
///  - On the cheating problem the current point is in the cheating region, so
///    ‖x‖² = 2M + 1 − C, and the target is the ball ‖y‖² ≤ min(C, M).
///
/// Interval lower bounds are clamped at 0; the unclamped value stays in `raw_lower`.

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace eea::bounds {

enum class FormulaId {
    PSph1d,     // P_sph^(1): 1-D exploitation probability
    PSphRus,    // P_sph^R: RUS exploitation probability (exact, plus sandwich)
    PSphEp,     // P_sph^E sandwich
    IrSph1d,    // IR_sph^(1)
    IrSphRus,   // IR_sph^R
    IrSphEp,    // IR_sph^E sandwich
    PCht1d,     // P_cht^(1): 1-D right-exploration probability
    PChtEp,     // P_cht^E sandwich
    IrCht1d,    // IR_cht^(1)
    IrChtEp,    // IR_cht^E sandwich
};

enum class BoundKind { Exact, Upper, Lower, Interval };

std::string_view to_string(FormulaId id) noexcept;
std::string_view to_string(BoundKind kind) noexcept;

struct BoundValue {
    FormulaId formula;
    BoundKind kind;
    double lower;
    double upper;
    double raw_lower;

    /// The point value of an Exact result (lower == upper).
    double value() const noexcept { return lower; }
    bool contains(double v, double slack = 0.0) const noexcept {
        return lower - slack <= v && v <= upper + slack;
    }

    static BoundValue exact(FormulaId id, double v) noexcept;
    static BoundValue interval(FormulaId id, double raw_lower, double upper) noexcept;
};

struct RusProbability {
    BoundValue exact;
    BoundValue sandwich;
};

// --- Exploitation: sphere -------------------------------------------------------------

/// Φ(2√C/σ) − ½.
BoundValue p_sph_1d(double c, double sigma);

/// (1/n) Σ [Φ(2|xᵢ|/σ) − ½] with sandwich
/// [(1/n)(Φ(2√C/(σ√n)) − ½), Φ(2√C/(σ√n)) − ½]. xs must satisfy Σxᵢ² = C to 1e-9 relative.
RusProbability p_sph_rus(std::span<const double> xs, double c, double sigma);

/// Upper (Φ(2√C/σ) − ½)(Φ(√C/σ) − Φ(−√C/σ))ⁿ⁻¹, lower (Φ(2√C/(σ√n)) − ½)ⁿ.
BoundValue p_sph_ep_bounds(double c, double sigma, std::size_t n);

/// 2σ/√(2πC) − (σ²/C)(½ − Φ(−2√C/σ)); maximal (≈ 0.3239) near σ/√C ≈ 0.88.
BoundValue ir_sph_1d(double c, double sigma);

/// (1/n) Σ (xᵢ²/C) IR_sph^(1)(xᵢ²).
BoundValue ir_sph_rus(std::span<const double> xs, double c, double sigma);

/// Upper = P_sph^E upper; lower = I₄·I₅ with I₄ = (Φ(2√C/(σ√n)) − ½)ⁿ⁻¹ and
/// I₅ = IR_sph^(1)(C/n).
BoundValue ir_sph_ep_bounds(double c, double sigma, std::size_t n);

/// I₅ alone, as a function of the scaled ratio σ√n/√C.
double ir_sph_ep_i5(double c, double sigma, std::size_t n);

// --- Exploration: cheating ------------------------------------------------------------

/// Φ((x + r)/σ) − Φ((x − r)/σ), x = √(2M+1−C), r = √M if C ≥ M else √C. Requires 0 < C ≤ M+1.
BoundValue p_cht_1d(double m, double c, double sigma);

/// σ* = √((b² − a²) / (2 ln(b/a))), the stationary point of Φ(b/σ) − Φ(a/σ), for b > a > 0.
double optimal_sigma(double a, double b);

/// σ* for the 1-D cheating probability, with a = x − r and b = x + r. Requires 0 < C < M+1.
double optimal_sigma_cht_1d(double m, double c);

/// Whether mutating one coordinate with xᵢ² can reach the right-exploration target from a
/// cheating-region point: min(C, M) − (2M + 1 − C) + xᵢ² > 0.
bool rus_cht_coordinate_feasible(double m, double c, double xi2);

/// With u = √(2M+1−C) and 0 < C < M:
/// upper (Φ((u+√C)/σ) − Φ((u−√C)/σ))(Φ(√C/σ) − Φ(−√C/σ))ⁿ⁻¹,
/// lower (Φ((u+√C)/(σ√n)) − Φ((u−√C)/(σ√n)))ⁿ.
BoundValue p_cht_ep_bounds(double m, double c, double sigma, std::size_t n);

/// Exact 1-D improvement rate into ‖y‖² ≤ C from x = √(2M+1−C), 0 < C < M.
BoundValue ir_cht_1d(double m, double c, double sigma);

/// Relative improvement (1/c2) ∫_{−√c2}^{√c2} (c2 − y²) N(y; x, σ²) dy for a start offset x.
/// Both 1-D improvement rates are instances: IR_sph^(1)(C) at x = √C, IR_cht^(1) at x = u.
double ball_improvement_1d(double c2, double x, double sigma);

/// Upper = P_cht^E upper; lower = Dⁿ⁻¹ · ball_improvement_1d(C/n, u/√n, σ) where
/// D = Φ((u+√C)/(σ√n)) − Φ((u−√C)/(σ√n)).
BoundValue ir_cht_ep_bounds(double m, double c, double sigma, std::size_t n);

// --- Dimension scaling ----------------------------------------------------------------

enum class DecayOffset { N, NMinus1 };

struct ScalingFit {
    double base_a;
    double r2;
    std::vector<std::size_t> dims;
};

/// Least-squares fit of log(value) against n (or n − 1); base_a = exp(slope).
/// Needs at least 4 positive values. Throws DecayFitError if base_a ∉ (0, 1).
ScalingFit fit_decay_base(const std::map<std::size_t, double>& values,
                          DecayOffset offset = DecayOffset::NMinus1);

}  // namespace eea::bounds
