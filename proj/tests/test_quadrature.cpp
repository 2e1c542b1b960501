#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include "heislink/errors.hpp"
#include "heislink/diagram.hpp"
#include "heislink/library.hpp"
#include "heislink/quadrature.hpp"

using namespace heislink;

namespace {

LegendrianKnot lift(const std::string& name) { return legendrian_lift(builtin(name).components.front(), 0.0); }

TorusIntegrandFactory from_function(std::function<double(double, double)> f) {
    return [f](int n) {
        TorusIntegrand t;
        t.value = [f, n](int i, int j) { return f(2 * M_PI * i / n, 2 * M_PI * j / n); };
        return t;
    };
}

QuadratureConfig fast() {
    QuadratureConfig q;
    q.max_n_grid = 1024;
    q.refine_until = 1e-3;
    return q;
}

// torsion from finite differences of positions only
double torsion_fd(const ParametricCurve& c, double th) {
    const double h = 1e-3;
    Vec3 p[5];
    for (int k = 0; k < 5; ++k) p[k] = c.position(th + (k - 2) * h);
    const Vec3 d1 = (1.0 / (12 * h)) * (p[0] - 8.0 * p[1] + 8.0 * p[3] - p[4]);
    const Vec3 d2 = (1.0 / (12 * h * h)) * (-p[0] + 16.0 * p[1] - 30.0 * p[2] + 16.0 * p[3] - p[4]);
    const Vec3 d3 = (1.0 / (2 * h * h * h)) * (-p[0] + 2.0 * p[1] - 2.0 * p[3] + p[4]);
    const Vec3 b = cross(d1, d2);
    return dot(b, d3) / dot(b, b) * norm(d1);
}

ParametricCurve perturbed_trefoil(double amp) {
    const ParametricCurve t = trefoil_space();
    const auto& f = t.fourier;
    const auto bump = FourierSeries::from_modes({{2, {amp, 0.0}}});
    return build_curve(f.x() + bump, f.y(), *f.z(), 512);
}

}  // namespace

TEST(IntegrateTorus, ConstantIntegratesToOne) {
    const auto r = integrate_torus(from_function([](double, double) { return 1.0 / (4 * M_PI * M_PI); }), {}, false);
    EXPECT_NEAR(r.value, 1.0, 1e-14);
}

TEST(IntegrateTorus, OddProductVanishes) {
    const auto r = integrate_torus(from_function([](double a, double b) { return std::sin(a) * std::cos(b); }), {}, false);
    EXPECT_NEAR(r.value, 0.0, 1e-14);
}

TEST(IntegrateTorus, SmoothPeriodicMatchesBesselProduct) {
    // ∫∫ e^{cos a + ½cos b} = 4π² I₀(1) I₀(½)
    const auto r = integrate_torus(
        from_function([](double a, double b) { return std::exp(std::cos(a) + 0.5 * std::cos(b)); }), {}, false);
    const double ref = 4 * M_PI * M_PI * boost::math::cyl_bessel_i(0, 1.0) * boost::math::cyl_bessel_i(0, 0.5);
    EXPECT_LT(std::abs(r.value - ref) / ref, 1e-10);
}

TEST(LkGauss, HopfAndUnlink) {
    const auto [a, b] = hopf_pair();
    const auto r = lk_gauss(a, b);
    EXPECT_NEAR(std::abs(r.value), 1.0, 1e-4);
    EXPECT_EQ(std::lround(r.value), linking_diagram(a, b).value);
    EXPECT_NEAR(lk_gauss(a, reverse_orientation(b)).value, -r.value, 1e-10);

    const auto [c, d] = distant_circles();
    EXPECT_LT(std::abs(lk_gauss(c, d).value), 1e-6);
}

TEST(LkHeisenberg, AgreesWithGaussAcrossBranches) {
    const auto [a, b] = hopf_pair();
    const double g = lk_gauss(a, b).value;
    for (double hbar : {0.0, 0.5, 1.0})
        for (double lambda : {4.0, 16.0}) {
            const auto r = lk_heisenberg(a, b, {lambda, hbar, 1.0});
            EXPECT_NEAR(r.value, g, 1e-3) << "hbar=" << hbar << " lambda=" << lambda;
        }
    const auto [c, d] = distant_circles();
    EXPECT_LT(std::abs(lk_heisenberg(c, d, {8.0, 0.0, 1.0}).value), 1e-4);
}

TEST(Slk0, FlatteningApproachesWrithe) {
    const ParametricCurve flat = flatten_isotopy(trefoil_space(), 50.0);
    EXPECT_NEAR(slk0(flat, fast()).value, writhe(flat), 0.05);
    EXPECT_NEAR(slk0(as_space_curve(unit_circle()), fast()).value, 0.0, 1e-10);
}

TEST(Slk0, IsNotAnIsotopyInvariant) {
    const double a = slk0(trefoil_space(), fast()).value;
    // stretching heights is an isotopy that changes the writhe integral
    const double b = slk0(flatten_isotopy(trefoil_space(), 0.5), fast()).value;
    EXPECT_GT(std::abs(a - b), 1e-3);
}

TEST(TotalTorsion, PlaneCurveIsZero) {
    EXPECT_NEAR(total_torsion(as_space_curve(unit_circle())), 0.0, 1e-14);
}

TEST(TotalTorsion, CoilMatchesFiniteDifferenceIntegral) {
    const ParametricCurve c = coil();
    const int m = 4096;
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += torsion_fd(c, 2 * M_PI * j / m);
    EXPECT_NEAR(total_torsion(c), s / m, 1e-6);
}

TEST(TotalTorsion, ShrinksUnderFlattening) {
    const ParametricCurve t = trefoil_space();
    const double a = std::abs(total_torsion(flatten_isotopy(t, 10.0)));
    const double b = std::abs(total_torsion(flatten_isotopy(t, 100.0)));
    EXPECT_LT(b, a);
    EXPECT_LT(b, 0.05);
}

TEST(SlkTau, FrenetSelfLinkingIsAnIsotopyInvariant) {
    EXPECT_NEAR(slk_tau(as_space_curve(unit_circle()), fast()).value, 0.0, 1e-10);
    const double a = slk_tau(trefoil_space(), fast()).value;
    EXPECT_NEAR(a, std::round(a), 0.05);
    EXPECT_NEAR(slk_tau(perturbed_trefoil(0.1), fast()).value, a, 1e-3);
    EXPECT_NEAR(slk_tau(flatten_isotopy(trefoil_space(), 0.5), fast()).value, a, 1e-3);
}

TEST(SlkKappa, HeisenbergBranchGivesTb) {
    for (const std::string name : {"lemniscate", "stabilized-unknot"}) {
        const LegendrianKnot k = lift(name);
        const double v16 = slk_kappa(k, {16.0, 1.0, 1.0}).value;
        EXPECT_NEAR(v16, tb_diagram(k), 0.02) << name;
        EXPECT_NEAR(slk_kappa(k, {4.0, 1.0, 1.0}).value, v16, 0.02) << name;
    }
}

TEST(SlkKappa, HeisenbergBranchFixedUnderReversal) {
    const LegendrianKnot k = lift("lemniscate");
    const LegendrianKnot r = legendrian_lift(reverse_orientation(k.gamma), 0.0);
    EXPECT_NEAR(slk_kappa(r, {8.0, 1.0, 1.0}).value, slk_kappa(k, {8.0, 1.0, 1.0}).value, 0.02);
}

TEST(SlkKappa, HbarBelowOneIsIndependentOfHbar) {
    const LegendrianKnot k = lift("lemniscate");
    const double a = slk_kappa(k, {16.0, 0.0, 1.0}).value;
    for (double hbar : {0.3, 0.7}) EXPECT_NEAR(slk_kappa(k, {16.0, hbar, 1.0}).value, a, 0.03) << hbar;
}

TEST(SlkKappa, PerEpsValuesAreNearlyAffine) {
    const auto r = slk_kappa(lift("lemniscate"), {16.0, 1.0, 1.0});
    ASSERT_EQ(r.per_eps_values.size(), 4u);
    ASSERT_EQ(r.eps_used.size(), 4u);
    // slopes between successive ε pairs agree
    const auto& v = r.per_eps_values;
    const auto& e = r.eps_used;
    const double s1 = (v[1] - v[0]) / (e[1] - e[0]);
    const double s2 = (v[3] - v[2]) / (e[3] - e[2]);
    EXPECT_NEAR(s1, s2, 0.05 + 0.1 * std::abs(s1));
    EXPECT_GT(r.grid_used, 0);
}

TEST(LambdaScan, SpreadAndScaling) {
    const LegendrianKnot k = lift("lemniscate");
    const LambdaScan s = lambda_scan(k, 1.0, {2.0, 4.0, 8.0, 16.0}, {}, {0.5});
    ASSERT_EQ(s.rows.size(), 4u);
    EXPECT_LT(s.spread, 0.03);
    ASSERT_FALSE(s.scaling.empty());
    for (const auto& c : s.scaling) EXPECT_LT(std::abs(c.difference), 2e-3) << "t=" << c.t << " lambda=" << c.lambda;
}

TEST(PeakGrid, GrowsWithLambdaAndReportsUnresolved) {
    const LegendrianKnot k = lift("lemniscate");
    QuadratureConfig q;
    const int n4 = peak_resolving_grid(k.space, {4.0, 1.0, 1.0}, q);
    const int n64 = peak_resolving_grid(k.space, {64.0, 1.0, 1.0}, q);
    EXPECT_GE(n64, n4);
    // each crossing peak of width √(tΔz/Λ) gets ≥ 8 samples
    double dz = INFINITY;
    for (const auto& c : find_crossings(k.space)) dz = std::min(dz, c.delta_z);
    EXPECT_GE(n64 * std::sqrt(dz / 64.0) / (2 * M_PI), 8.0);

    q.max_n_grid = 256;
    try {
        slk_kappa(k, {1e5, 1.0, 1.0}, q);
        ADD_FAILURE() << "expected UnresolvedPeak";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnresolvedPeak);
    }
}
