#pragma once

#include "heislink/curve.hpp"
#include "heislink/vec.hpp"

namespace heislink {

struct HeatParams {
    double lambda = 8.0;
    double hbar = 0.0;
    double t = 1.0;

    // throws NonPositiveLambda / NonPositiveT / InvalidArgument
    void validate() const;
};

struct DifferenceVector {
    double dx = 0.0, dy = 0.0, dz_hat = 0.0;
};

// (x₁+x₂, y₁+y₂, z₁+z₂−ℏ(x₁y₂−x₂y₁))
Vec3 heisenberg_mul(Vec3 p1, Vec3 p2, double hbar);
inline Vec3 heisenberg_inverse(Vec3 p) { return -p; }
// X₁⁻¹·X₂ = (x₂−x₁, y₂−y₁, z₂−z₁+ℏ(x₁y₂−x₂y₁))
DifferenceVector heisenberg_diff(Vec3 p1, Vec3 p2, double hbar);

// density of ω_Λ w.r.t. dx∧dy
double gaussian_form(double x, double y, double lambda);
// (dx, dy) coefficients of α_Λ
Vec2 transgression_form(double x, double y, double lambda);

Vec3 retraction_sphere(Vec3 p);
// (x/√z, y/√z)
Vec2 retraction_plane(Vec3 p);

// dθ₁∧dθ₂ densities; a is the jet of the first curve at θ₁, b of the second at θ₂
double angular_density(const Jet& a, const Jet& b);
double heat_density(const Jet& a, const Jet& b, const HeatParams& p);

double angular_integrand(const ParametricCurve& c1, const ParametricCurve& c2, double th1, double th2);
double heat_integrand(const ParametricCurve& c1, const ParametricCurve& c2, double th1, double th2,
                      const HeatParams& p);

// (Ẋ×Ẍ)·X⃛ / |Ẋ×Ẍ|²; throws CurvatureVanishes when the curvature is numerically zero
double torsion(const Jet& j);
double torsion(const ParametricCurve& c, double theta);

}  // namespace heislink
