#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heislink/curve.hpp"
#include "heislink/errors.hpp"

namespace heislink {

// relative tolerances; absolute values are derived from the curve's size
struct Tolerances {
    double area = 1e-8;   // × L², L = diameter of γ
    double leg = 1e-8;    // × (max|z| + max|γ|²)
    double gap = 1e-4;    // × z-extent
    double morse = 1e-6;  // × max|z̈|
};

struct CriticalPoint {
    double theta = 0.0;
    double zddot = 0.0;
};

struct CrossingGap {
    int id = 0;
    double delta_z = 0.0;
};

struct ValidationReport {
    double area_residual = 0.0;  // ∮(yẋ − xẏ)dθ
    double tol_area = 0.0;
    std::vector<CrossingGap> crossing_gaps;
    double gap_min = 0.0;
    double kappa_residual = 0.0;
    double tol_leg = 0.0;
    bool morse_ok = false;
    std::vector<CriticalPoint> morse_critical_points;
    double morse_tol = 0.0;
    bool valid = false;
    std::optional<ErrorKind> failure;
    std::string reason;
};

struct LegendrianKnot {
    ParametricCurve gamma;  // plane immersion
    ParametricCurve space;  // (x, y, z)
    double z0 = 0.0;
    std::vector<double> z_samples, z_dot_samples;
    ValidationReport certificate;

    double scale() const;
};

// Full certificate without throwing; failure/reason name the first violated condition.
ValidationReport validate_lift(const ParametricCurve& gamma, double z0, const Tolerances& tol = {});
// Throws Error(AreaNotZero | CrossingDegenerate | MorseFail) when the lift is not a valid knot.
LegendrianKnot legendrian_lift(const ParametricCurve& gamma, double z0 = 0.0, const Tolerances& tol = {});

// max_j |ż − (yẋ − xẏ)| over the sample grid
double check_legendrian(const ParametricCurve& space);
double check_legendrian(const LegendrianKnot& knot);

// (x, y, t·z)
ParametricCurve scale_family(const ParametricCurve& space, double t);
ParametricCurve scale_family(const LegendrianKnot& knot, double t);
// (x, y, z/lam)
ParametricCurve flatten_isotopy(const ParametricCurve& space, double lam);

enum class Framing { Reeb, FrenetSerret };
ParametricCurve push_off(const ParametricCurve& space, Framing framing, double delta);
ParametricCurve push_off(const LegendrianKnot& knot, Framing framing, double delta);

// min over the curve of |Ẋ×Ẍ| (refined between samples) and the max over samples
struct CurvatureExtent {
    double min = 0.0, max = 0.0;
};
CurvatureExtent curvature_extent(const ParametricCurve& c);
void require_nonvanishing_curvature(const ParametricCurve& c);

}  // namespace heislink
