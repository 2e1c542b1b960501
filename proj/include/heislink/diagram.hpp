#pragma once

#include <vector>

#include "heislink/curve.hpp"
#include "heislink/legendrian.hpp"

namespace heislink {

struct Crossing {
    int id = 0;
    // For plane curves without heights theta_under < theta_over and writhe_sign = 0.
    double theta_under = 0.0, theta_over = 0.0;
    Vec2 point;
    int writhe_sign = 0;
    double delta_z = 0.0;
    Vec2 tangent_under, tangent_over;
    // component index of each strand (links only; 0 for knots)
    int strand_under = 0, strand_over = 0;
};

struct DiagramOptions {
    double cross_angle_min = 1e-3;  // radians
    int min_polygon = 1024;         // vertices of the detection polygon
};

// Double points of the xy-projection; ordered by height when the curve carries z.
std::vector<Crossing> find_crossings(const ParametricCurve& curve, const DiagramOptions& opts = {});

int writhe(const std::vector<Crossing>& crossings);
int writhe(const ParametricCurve& space, const DiagramOptions& opts = {});
int tb_diagram(const LegendrianKnot& knot, const DiagramOptions& opts = {});

struct RotationNumber {
    double raw = 0.0;
    int rounded = 0;
};
// Throws NotNearInteger when |raw − rounded| > tol.
RotationNumber rot_curvature(const ParametricCurve& gamma, double tol = 1e-6);
int rot_tangencies(const ParametricCurve& gamma);

struct LinkingDiagram {
    int c2_over_c1 = 0;
    int c1_over_c2 = 0;
    int half_total = 0;  // half the signed count over all inter-strand crossings
    int value = 0;
    std::vector<Crossing> crossings;
};
// Throws ProjectionDegenerate when the three sums disagree or the projection is not generic.
LinkingDiagram linking_diagram(const ParametricCurve& c1, const ParametricCurve& c2,
                               const DiagramOptions& opts = {});

}  // namespace heislink
