#include <cmath>

#include <gtest/gtest.h>

#include "heislink/errors.hpp"
#include "heislink/diagram.hpp"
#include "heislink/legendrian.hpp"
#include "heislink/library.hpp"

using namespace heislink;

namespace {

LegendrianKnot lift(const std::string& name, double z0 = 0.0) {
    return legendrian_lift(builtin(name).components.front(), z0);
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::ParseError;  // sentinel: nothing thrown
}

}  // namespace

TEST(Lift, CircleEnclosesArea) {
    const ValidationReport r = validate_lift(unit_circle(), 0.0);
    EXPECT_FALSE(r.valid);
    ASSERT_TRUE(r.failure);
    EXPECT_EQ(*r.failure, ErrorKind::AreaNotZero);
    EXPECT_NEAR(r.area_residual, -2 * M_PI, 1e-12);
    EXPECT_EQ(kind_of([] { legendrian_lift(unit_circle()); }), ErrorKind::AreaNotZero);
}

TEST(Lift, GeronoHasZeroAreaButIsNotMorse) {
    const ValidationReport r = validate_lift(gerono(), 0.0);
    EXPECT_LT(std::abs(r.area_residual), 1e-12);
    EXPECT_FALSE(r.morse_ok);
    EXPECT_EQ(kind_of([] { legendrian_lift(gerono()); }), ErrorKind::MorseFail);
}

TEST(Lift, LibraryKnotsAreValid) {
    for (const std::string name : {"lemniscate", "hypotrochoid", "stabilized-unknot"}) {
        const LegendrianKnot k = lift(name);
        EXPECT_TRUE(k.certificate.valid) << name;
        EXPECT_LT(std::abs(k.certificate.area_residual), k.certificate.tol_area) << name;
        EXPECT_TRUE(k.certificate.morse_ok) << name;
        for (const auto& g : k.certificate.crossing_gaps) EXPECT_GT(std::abs(g.delta_z), k.certificate.gap_min);
        EXPECT_LT(check_legendrian(k), 1e-10) << name;
    }
}

TEST(Lift, LiftIntegratesTheContactCondition) {
    // ż = −(xẏ − yẋ) checked against an independent trapezoid integral of the right side
    const LegendrianKnot k = lift("lemniscate");
    const int m = 20000;
    double z = k.space.position(0.0).z;
    for (int j = 0; j < m; ++j) {
        const double a = 2 * M_PI * j / m, b = 2 * M_PI * (j + 1) / m;
        auto g = [&](double th) {
            const Jet J = k.gamma.jet(th);
            return J.p.x * J.d1.y - J.p.y * J.d1.x;
        };
        z -= 0.5 * (b - a) * (g(a) + g(b));
        if ((j + 1) % 5000 == 0) EXPECT_NEAR(k.space.position(b).z, z, 1e-7);
    }
}

TEST(Lift, ZOffsetIsIrrelevant) {
    const LegendrianKnot a = lift("lemniscate", 0.0);
    const LegendrianKnot b = lift("lemniscate", 5.0);
    EXPECT_NEAR(b.space.position(1.0).z - a.space.position(1.0).z, 5.0, 1e-12);
    EXPECT_EQ(tb_diagram(a), tb_diagram(b));
    EXPECT_LT(check_legendrian(b), 1e-10);
}

TEST(Lift, CrossingDegenerateWhenGapTooSmall) {
    // demand a gap larger than the z-extent
    Tolerances tol;
    tol.gap = 2.0;
    EXPECT_EQ(kind_of([&] { legendrian_lift(lemniscate(), 0.0, tol); }), ErrorKind::CrossingDegenerate);
}

TEST(CheckLegendrian, PerturbedHeightsShowResidual) {
    const LegendrianKnot k = lift("lemniscate");
    const auto& f = k.space.fourier;
    const auto bump = FourierSeries::from_modes({{1, {0.0, -0.05}}});  // 0.1·sinθ
    const ParametricCurve bumped = build_curve(f.x(), f.y(), *f.z() + bump, 256);
    EXPECT_NEAR(check_legendrian(bumped), 0.1, 1e-3);
}

TEST(ScaleFamily, Behaviour) {
    const LegendrianKnot k = lift("lemniscate");
    const ParametricCurve same = scale_family(k, 1.0);
    EXPECT_EQ(same.position(0.4).z, k.space.position(0.4).z);
    const ParametricCurve half = scale_family(k, 0.5);
    for (double th : {0.3, 2.2}) {
        EXPECT_NEAR(half.position(th).z, 0.5 * k.space.position(th).z, 1e-15);
        EXPECT_EQ(half.position(th).x, k.space.position(th).x);
    }
    // Legendrian for κ_t: t⁻¹ż_t = −(xẏ − yẋ)
    const ParametricCurve two = scale_family(k, 2.0);
    for (double th : {0.1, 1.9, 4.5}) {
        const Jet J = two.jet(th);
        EXPECT_NEAR(J.d1.z / 2.0 + (J.p.x * J.d1.y - J.p.y * J.d1.x), 0.0, 1e-10);
    }
    EXPECT_EQ(kind_of([&] { scale_family(k, 0.0); }), ErrorKind::NonPositiveT);
}

TEST(FlattenIsotopy, ScalesHeightsOnly) {
    const ParametricCurve tref = trefoil_space();
    const ParametricCurve same = flatten_isotopy(tref, 1.0);
    EXPECT_NEAR(same.position(0.7).z, tref.position(0.7).z, 1e-15);
    const ParametricCurve flat = flatten_isotopy(tref, 20.0);
    double zmax = 0, zmax_flat = 0;
    for (int j = 0; j < 512; ++j) {
        const double th = 2 * M_PI * j / 512;
        zmax = std::max(zmax, std::abs(tref.position(th).z));
        zmax_flat = std::max(zmax_flat, std::abs(flat.position(th).z));
        EXPECT_EQ(flat.position(th).x, tref.position(th).x);
    }
    EXPECT_NEAR(zmax_flat * 20.0, zmax, 1e-12);
    EXPECT_EQ(writhe(flat), writhe(tref));
    EXPECT_EQ(kind_of([&] { flatten_isotopy(tref, -1.0); }), ErrorKind::NonPositiveLambda);
}

TEST(PushOff, ReebIsDisjointVerticalTranslate) {
    const LegendrianKnot k = lift("lemniscate");
    const double delta = 0.05;
    const ParametricCurve p = push_off(k, Framing::Reeb, delta);
    double dmin = INFINITY;
    for (int i = 0; i < 400; ++i) {
        const double th = 2 * M_PI * i / 400;
        const Vec3 d = p.position(th) - k.space.position(th);
        EXPECT_NEAR(norm(d - Vec3{0, 0, delta}), 0.0, 1e-12);
        for (int j = 0; j < 400; ++j) dmin = std::min(dmin, norm(p.position(th) - k.space.position(2 * M_PI * j / 400)));
    }
    // nearby strand points sit at distance ≈ δ·sin(angle to the Reeb field), still away from 0
    EXPECT_GT(dmin, 0.1 * delta);
}

TEST(PushOff, FrenetOnCircleIsConcentric) {
    const ParametricCurve c = as_space_curve(unit_circle());
    const ParametricCurve p = push_off(c, Framing::FrenetSerret, 0.1);
    for (double th : {0.0, 1.0, 2.5, 4.0}) {
        const Vec3 q = p.position(th);
        EXPECT_NEAR(std::hypot(q.x, q.y), 0.9, 1e-8);
        EXPECT_NEAR(q.z, 0.0, 1e-12);
    }
}

TEST(PushOff, FrenetFailsAtInflection) {
    // a figure-eight plane curve has inflection points
    const ParametricCurve c = as_space_curve(gerono());
    EXPECT_EQ(kind_of([&] { push_off(c, Framing::FrenetSerret, 0.05); }), ErrorKind::CurvatureVanishes);
}
