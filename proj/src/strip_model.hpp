#pragma once

#include "heislink/curve.hpp"
#include "heislink/forms.hpp"

namespace heislink::detail {

// Near the diagonal Δ̂z ≈ η·q(φ) with q = ż + ℏ(xẏ − yẋ). For a curve with ż = −c(xẏ − yẋ)
// the leading density integrates in closed form over |η| < ε.
struct StripModel {
    double c = 1.0;  // Legendrian factor
    double hbar = 0.0;
    double lambda_eff = 0.0;
    bool heisenberg = false;  // ℏ = c, so q vanishes identically

    double mass(const Jet& J, double eps) const;
};

// Throws InvalidArgument if the curve is not Legendrian for any scaled contact form.
StripModel make_strip_model(const ParametricCurve& space, const HeatParams& p);

}  // namespace heislink::detail
