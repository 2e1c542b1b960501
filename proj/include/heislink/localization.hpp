#pragma once

#include <vector>

#include "heislink/diagram.hpp"
#include "heislink/forms.hpp"
#include "heislink/legendrian.hpp"
#include "heislink/quadrature.hpp"

namespace heislink {

struct BallIntegral {
    double value = 0.0;
    double radius = 0.0;  // after shrinking
    double value_inner = 0.0;  // same integral at 0.75 × radius
};

// Integral of the heat density over the disc of the given radius around (θ_under, θ_over),
// the preimage where Δ̂z > 0. The radius is halved until the difference map is injective on
// the disc; radius ≤ 0 picks 6σ from the local Gaussian width. Throws BallTooLarge.
BallIntegral crossing_ball_integral(const LegendrianKnot& knot, const Crossing& crossing, const HeatParams& params,
                                    double radius);
double crossing_contribution(const LegendrianKnot& knot, const Crossing& crossing, const HeatParams& params,
                             double radius, const QuadratureConfig& config = {});

// local Gaussian width of the crossing peak in parameter space
double crossing_peak_width(const LegendrianKnot& knot, const Crossing& crossing, const HeatParams& params);

// Straight-line crossing model X⁻ = (0, θ₁, 0), X⁺ = (θ₂, 0, Δz) integrated over the disc |θ| < radius.
double crossing_model_integral(const HeatParams& params, double delta_z, double radius);

// closed-form leading density near the diagonal at θ₁ = φ, θ₂ = φ + η; 0 where positivity fails
double diagonal_leading_integrand(const LegendrianKnot& knot, double phi, double eta, const HeatParams& params);

// ∫ heat density over ε < |η| < strip_width plus the modelled mass of |η| < ε, ε → 0.
// strip_width ≤ 0 uses max(0.2, 10/√(Λ/t)). Throws StripHitsCrossing.
IntegralResult diagonal_contribution(const LegendrianKnot& knot, const HeatParams& params, double strip_width,
                                     const QuadratureConfig& config = {});

// Λ → ∞ limit of the diagonal piece obtained by integrating the leading density over η:
// (1/2π)∮ sgn((1−ℏ)γ×γ̇)(γ̇×γ̈)/|γ̇|² dθ for ℏ ≠ 1 and 0 for ℏ = 1.
double diagonal_limit(const LegendrianKnot& knot, double hbar);

struct CrossingContribution {
    int id = 0;
    int writhe_sign = 0;
    double value = 0.0;
    double value_inner = 0.0;
    double model_value = 0.0;
    double radius = 0.0;
    double theta_under = 0.0, theta_over = 0.0;
};

struct LocalizationReport {
    HeatParams params;
    std::vector<CrossingContribution> crossing_contribs;
    double crossing_sum = 0.0;
    double diagonal_contrib = 0.0;
    double diagonal_est_error = 0.0;
    double diagonal_limit = 0.0;
    double strip_width = 0.0;
    double total = 0.0;
    double slk_reference = 0.0;
    double slk_est_error = 0.0;
    double residual = 0.0;
};

struct Layout {
    double strip_width = 0.0;
    std::vector<double> radii;  // per crossing, in find_crossings order
};
// Strip width and ball radii that keep the pieces disjoint.
Layout plan_layout(const LegendrianKnot& knot, const std::vector<Crossing>& crossings, const HeatParams& params);

LocalizationReport decompose(const LegendrianKnot& knot, const HeatParams& params, const QuadratureConfig& config = {});

enum class LemmaProfile { Linear, Scaled };

struct CalcLemmaRow {
    double eps = 0.0;
    double K = 0.0;
    double bound = 0.0;  // ε|ln ε| + ε/e (linear profile)
    bool within_bound = true;
};

struct CalcLemmaTable {
    LemmaProfile profile = LemmaProfile::Linear;
    std::vector<CalcLemmaRow> rows;
    bool monotone = true;
    bool bounds_ok = true;
};

// K(ε) = ∫₀¹ (ε/f)e^{−ε/f} dφ with f(φ) = φ (linear) or 2φ (scaled)
CalcLemmaTable calc_lemma_check(LemmaProfile profile, const std::vector<double>& eps_list);

}  // namespace heislink
