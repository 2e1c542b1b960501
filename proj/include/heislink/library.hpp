#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heislink/curve.hpp"

namespace heislink {

// x + iy = Σ a_k e^{ikθ}
ParametricCurve plane_curve_from_complex(const std::vector<std::pair<int, cplx>>& modes, int n_samples,
                                         std::string name = {});

ParametricCurve unit_circle(int n_samples = 256);
ParametricCurve double_circle(int n_samples = 256);
// (cosθ, sinθcosθ); passes through the origin, so its lift is not Morse
ParametricCurve gerono(int n_samples = 256);
// Gerono curve translated by (0.3, 0.2)
ParametricCurve lemniscate(int n_samples = 256);
ParametricCurve hypotrochoid(double a = 1.4142135623730951, double b = 1.0, int n_samples = 256);
// 0.7e^{iθ} + c e^{−iθ} + 0.35e^{3iθ} with c found by root-finding the signed area to zero
ParametricCurve stabilized_unknot(int n_samples = 256);
double stabilized_unknot_coefficient();

ParametricCurve trefoil_space(int n_samples = 512);
ParametricCurve coil(int n_samples = 256);

using CurvePair = std::pair<ParametricCurve, ParametricCurve>;
// C1 = (cosθ, sinθ, 0), C2 = (1+cosθ, 0, sinθ); the xy-projection of C2 is degenerate
CurvePair hopf_pair_raw(int n_samples = 256);
// the same pair after a fixed rotation that makes the xy-projection generic
CurvePair hopf_pair(int n_samples = 256);
CurvePair distant_circles(int n_samples = 256);

struct CurveInput {
    std::string name;
    std::vector<ParametricCurve> components;
    double z0 = 0.0;

    bool is_link() const { return components.size() > 1; }
    // a single plane curve, to be lifted
    bool is_plane() const { return components.size() == 1 && !components[0].is_space_curve(); }
};

std::vector<std::string> builtin_names();
// name without the "builtin:" prefix; throws ParseError for unknown names
CurveInput builtin(const std::string& name, int n_samples = 0);

}  // namespace heislink
