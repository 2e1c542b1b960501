#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "heislink/errors.hpp"
#include "heislink/diagram.hpp"
#include "heislink/library.hpp"

using namespace heislink;

namespace {

LegendrianKnot lift(const std::string& name) { return legendrian_lift(builtin(name).components.front(), 0.0); }

// Brute force: intersect every pair of chords of a fine polygon. Returns (θ_a, θ_b, point) with θ_a < θ_b.
struct RawCrossing {
    double ta, tb;
    Vec2 p;
};

std::vector<RawCrossing> brute_force_crossings(const ParametricCurve& c, int m) {
    std::vector<Vec2> pts(m);
    for (int j = 0; j < m; ++j) pts[j] = xy(c.position(2 * M_PI * j / m));
    std::vector<RawCrossing> out;
    for (int i = 0; i < m; ++i)
        for (int j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;
            const Vec2 a = pts[i], b = pts[(i + 1) % m], c2 = pts[j], d = pts[(j + 1) % m];
            const double den = cross(b - a, d - c2);
            if (den == 0.0) continue;
            const double s = cross(c2 - a, d - c2) / den;
            const double u = cross(c2 - a, b - a) / den;
            if (s >= 0 && s < 1 && u >= 0 && u < 1)
                out.push_back({2 * M_PI * (i + s) / m, 2 * M_PI * (j + u) / m, a + s * (b - a)});
        }
    return out;
}

}  // namespace

TEST(FindCrossings, CircleHasNone) { EXPECT_TRUE(find_crossings(unit_circle()).empty()); }

TEST(FindCrossings, GeronoCrossesAtOrigin) {
    const auto cs = find_crossings(gerono());
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_NEAR(norm(Vec3{cs[0].point.x, cs[0].point.y, 0.0}), 0.0, 1e-12);
    std::vector<double> th{cs[0].theta_under, cs[0].theta_over};
    std::sort(th.begin(), th.end());
    EXPECT_NEAR(th[0], M_PI / 2, 1e-10);
    EXPECT_NEAR(th[1], 3 * M_PI / 2, 1e-10);
}

TEST(FindCrossings, HypotrochoidMatchesBruteForceAndHasThreefoldSymmetry) {
    const ParametricCurve c = hypotrochoid();
    const auto cs = find_crossings(c);
    const auto raw = brute_force_crossings(c, 4096);
    ASSERT_EQ(cs.size(), 3u);
    ASSERT_EQ(raw.size(), 3u);
    for (const auto& r : raw) {
        double best = INFINITY;
        for (const auto& x : cs) best = std::min(best, std::hypot(x.point.x - r.p.x, x.point.y - r.p.y));
        EXPECT_LT(best, 1e-4);
    }
    // every crossing point rotated by 2π/3 is again a crossing point
    const double c3 = std::cos(2 * M_PI / 3), s3 = std::sin(2 * M_PI / 3);
    for (const auto& x : cs) {
        const Vec2 r{c3 * x.point.x - s3 * x.point.y, s3 * x.point.x + c3 * x.point.y};
        double best = INFINITY;
        for (const auto& y : cs) best = std::min(best, std::hypot(y.point.x - r.x, y.point.y - r.y));
        EXPECT_LT(best, 1e-10);
    }
    // refined points coincide on both strands
    for (const auto& x : cs) EXPECT_LT(norm(c.position(x.theta_under) - c.position(x.theta_over)), 1e-10 * c.diameter());
}

TEST(FindCrossings, LiftOrdersByHeight) {
    const LegendrianKnot k = lift("hypotrochoid");
    for (const auto& x : find_crossings(k.space)) {
        EXPECT_GT(k.space.position(x.theta_over).z, k.space.position(x.theta_under).z);
        EXPECT_GT(x.delta_z, 0.0);
        EXPECT_GT(std::abs(cross(x.tangent_under, x.tangent_over)), 1e-3);
    }
}

TEST(Writhe, SignsFromTangentsAndHeights) {
    // independent sign rule: sign(t_over × t_under), tangents from the jets directly
    for (const std::string name : {"lemniscate", "hypotrochoid", "stabilized-unknot"}) {
        const LegendrianKnot k = lift(name);
        int w = 0;
        for (const auto& x : find_crossings(k.space)) {
            const Vec2 to = xy(k.space.jet(x.theta_over).d1), tu = xy(k.space.jet(x.theta_under).d1);
            const int s = cross(to, tu) > 0 ? 1 : -1;
            EXPECT_EQ(s, x.writhe_sign);
            w += s;
        }
        EXPECT_EQ(writhe(k.space), w) << name;
    }
}

TEST(Writhe, RoundUnknotIsZero) { EXPECT_EQ(writhe(as_space_curve(unit_circle())), 0); }

TEST(Writhe, InvariantUnderReversal) {
    const ParametricCurve t = trefoil_space();
    EXPECT_EQ(writhe(reverse_orientation(t)), writhe(t));
    EXPECT_EQ(std::abs(writhe(t)), 3);
}

TEST(TbDiagram, LibraryValues) {
    EXPECT_EQ(tb_diagram(lift("lemniscate")), -1);
    const int tb = tb_diagram(lift("hypotrochoid"));
    EXPECT_EQ(std::abs(tb), 3);
    for (const auto& x : find_crossings(lift("hypotrochoid").space)) EXPECT_EQ(x.writhe_sign * 3, tb);
}

TEST(TbDiagram, InvariantUnderReversal) {
    for (const std::string name : {"lemniscate", "hypotrochoid", "stabilized-unknot"}) {
        const LegendrianKnot k = lift(name);
        const LegendrianKnot r = legendrian_lift(reverse_orientation(k.gamma), 0.0);
        EXPECT_EQ(tb_diagram(r), tb_diagram(k)) << name;
    }
}

TEST(Rotation, CircleVariants) {
    EXPECT_EQ(rot_curvature(unit_circle()).rounded, 1);
    EXPECT_EQ(rot_tangencies(unit_circle()), 1);
    EXPECT_EQ(rot_curvature(double_circle()).rounded, 2);
    EXPECT_EQ(rot_tangencies(double_circle()), 2);
    EXPECT_EQ(rot_curvature(reverse_orientation(unit_circle())).rounded, -1);
}

TEST(Rotation, Lemniscate) {
    const RotationNumber r = rot_curvature(gerono());
    EXPECT_EQ(r.rounded, 0);
    EXPECT_LT(std::abs(r.raw), 1e-8);
    EXPECT_EQ(rot_tangencies(gerono()), 0);
}

TEST(LinkingDiagram, HopfAndUnlink) {
    const auto [a, b] = hopf_pair();
    const LinkingDiagram d = linking_diagram(a, b);
    EXPECT_EQ(std::abs(d.value), 1);
    EXPECT_EQ(d.c1_over_c2, d.value);
    EXPECT_EQ(d.c2_over_c1, d.value);
    EXPECT_EQ(d.half_total, d.value);
    EXPECT_EQ(d.crossings.size(), 2u);

    const auto [c, e] = distant_circles();
    EXPECT_EQ(linking_diagram(c, e).value, 0);
    EXPECT_TRUE(linking_diagram(c, e).crossings.empty());
}

TEST(LinkingDiagram, RawHopfProjectionIsDegenerate) {
    const auto [a, b] = hopf_pair_raw();
    try {
        linking_diagram(a, b);
        ADD_FAILURE() << "expected ProjectionDegenerate";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ProjectionDegenerate);
    }
}

TEST(LinkingDiagram, ReversalNegates) {
    const auto [a, b] = hopf_pair();
    EXPECT_EQ(linking_diagram(a, reverse_orientation(b)).value, -linking_diagram(a, b).value);
}
