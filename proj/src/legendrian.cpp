#include "heislink/legendrian.hpp"

#include <algorithm>
#include <cmath>

#include "heislink/diagram.hpp"
#include "numeric.hpp"

namespace heislink {

namespace {

using detail::two_pi;

// g = x ẏ − y ẋ = γ × γ̇, so ż = −g on a lift
FourierSeries area_density(const ParametricCurve& gamma) {
    const auto& x = gamma.fourier.x();
    const auto& y = gamma.fourier.y();
    return x * y.derivative() - y * x.derivative();
}

int fine_grid(int degree) {
    int m = 2048;
    while (m < 32 * (degree + 1)) m *= 2;
    return m;
}

}  // namespace

double LegendrianKnot::scale() const {
    double zmax = 0.0, rmax = 0.0;
    for (double z : z_samples) zmax = std::max(zmax, std::abs(z));
    for (const auto& p : gamma.samples.pos) rmax = std::max(rmax, p.x * p.x + p.y * p.y);
    return zmax + rmax;
}

double check_legendrian(const ParametricCurve& space) {
    const auto& s = space.samples;
    double r = 0.0;
    for (int j = 0; j < s.n_samples; ++j) {
        const Vec3 p = s.pos[j], v = s.d1[j];
        r = std::max(r, std::abs(v.z - (p.y * v.x - p.x * v.y)));
    }
    return r;
}

double check_legendrian(const LegendrianKnot& knot) { return check_legendrian(knot.space); }

ValidationReport validate_lift(const ParametricCurve& gamma, double z0, const Tolerances& tol) {
    ValidationReport rep;
    auto fail = [&](ErrorKind k, const std::string& why) {
        if (!rep.failure) {
            rep.failure = k;
            rep.reason = why;
        }
    };

    const FourierSeries g = area_density(gamma);
    const double L = gamma.diameter();
    rep.area_residual = -two_pi * g.mean();
    rep.tol_area = tol.area * L * L;
    if (std::abs(rep.area_residual) > rep.tol_area) {
        fail(ErrorKind::AreaNotZero, "signed area integral " + std::to_string(rep.area_residual) + " is not zero");
        rep.valid = false;
        return rep;
    }

    // z = z0 + ∫₀^θ −g
    FourierSeries Z = g.shifted(-g.mean()).scaled(-1.0).antiderivative();
    Z = Z.shifted(z0 - Z.eval(0.0));
    const ParametricCurve space =
        build_curve(gamma.fourier.x(), gamma.fourier.y(), Z, gamma.n_samples(), gamma.name);

    double zmax = 0.0, rmax = 0.0, zlo = INFINITY, zhi = -INFINITY;
    for (const auto& p : space.samples.pos) {
        zmax = std::max(zmax, std::abs(p.z));
        rmax = std::max(rmax, p.x * p.x + p.y * p.y);
        zlo = std::min(zlo, p.z);
        zhi = std::max(zhi, p.z);
    }
    rep.kappa_residual = check_legendrian(space);
    rep.tol_leg = tol.leg * (zmax + rmax);
    if (rep.kappa_residual > rep.tol_leg) fail(ErrorKind::InvalidArgument, "lift residual exceeds tolerance");

    // Morse: zeros of ż = −g must be simple
    const FourierSeries dg = g.derivative();
    double zdd_max = 0.0;
    for (const auto& a : space.samples.d2) zdd_max = std::max(zdd_max, std::abs(a.z));
    rep.morse_tol = tol.morse * zdd_max;
    rep.morse_ok = true;
    const int m = fine_grid(g.degree());
    auto gf = [&](double th) { return g.eval(th); };
    for (double th : detail::periodic_roots(gf, m)) {
        const double zdd = -dg.eval(th);
        rep.morse_critical_points.push_back({th, zdd});
        if (std::abs(zdd) < rep.morse_tol) rep.morse_ok = false;
    }
    double gmax = 0.0;
    for (int j = 0; j < m; ++j) gmax = std::max(gmax, std::abs(gf(two_pi * j / m)));
    auto g2 = [&](double th) { return g.eval(th) * g.eval(th); };
    for (const auto& [th, val] : detail::periodic_minima(g2, m)) {
        // double zero without sign change
        if (std::sqrt(val) < 1e-10 * gmax && std::abs(dg.eval(th)) < rep.morse_tol) {
            const bool known = std::any_of(rep.morse_critical_points.begin(), rep.morse_critical_points.end(),
                                           [&](const CriticalPoint& c) {
                                               return std::abs(detail::wrap_pi(c.theta - th)) < 1e-6;
                                           });
            if (!known) rep.morse_critical_points.push_back({th, -dg.eval(th)});
            rep.morse_ok = false;
        }
    }
    std::sort(rep.morse_critical_points.begin(), rep.morse_critical_points.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.theta < b.theta; });

    rep.gap_min = tol.gap * (zhi - zlo);
    try {
        for (const auto& c : find_crossings(space)) {
            rep.crossing_gaps.push_back({c.id, c.delta_z});
            if (c.delta_z < rep.gap_min)
                fail(ErrorKind::CrossingDegenerate,
                     "height gap " + std::to_string(c.delta_z) + " at crossing " + std::to_string(c.id));
        }
    } catch (const Error& e) {
        fail(e.kind(), e.what());
    }
    if (!rep.morse_ok) fail(ErrorKind::MorseFail, "height function has a degenerate critical point");

    rep.valid = !rep.failure.has_value();
    return rep;
}

LegendrianKnot legendrian_lift(const ParametricCurve& gamma, double z0, const Tolerances& tol) {
    if (gamma.is_space_curve()) throw Error(ErrorKind::InvalidArgument, "lift expects a plane curve");
    ValidationReport rep = validate_lift(gamma, z0, tol);
    if (!rep.valid) throw Error(*rep.failure, rep.reason);

    const FourierSeries g = area_density(gamma);
    FourierSeries Z = g.shifted(-g.mean()).scaled(-1.0).antiderivative();
    Z = Z.shifted(z0 - Z.eval(0.0));

    LegendrianKnot k;
    k.gamma = gamma;
    k.space = build_curve(gamma.fourier.x(), gamma.fourier.y(), Z, gamma.n_samples(), gamma.name);
    k.z0 = z0;
    for (int j = 0; j < k.space.n_samples(); ++j) {
        k.z_samples.push_back(k.space.samples.pos[j].z);
        k.z_dot_samples.push_back(k.space.samples.d1[j].z);
    }
    k.certificate = std::move(rep);
    return k;
}

ParametricCurve scale_family(const ParametricCurve& space, double t) {
    if (!(t > 0.0)) throw Error(ErrorKind::NonPositiveT, "t must be positive");
    if (!space.is_space_curve()) throw Error(ErrorKind::InvalidArgument, "scale_family needs a space curve");
    if (t == 1.0) return space;
    const auto& f = space.fourier;
    return build_curve(f.x(), f.y(), f.z()->scaled(t), space.n_samples(), space.name);
}

ParametricCurve scale_family(const LegendrianKnot& knot, double t) { return scale_family(knot.space, t); }

ParametricCurve flatten_isotopy(const ParametricCurve& space, double lam) {
    if (!(lam > 0.0)) throw Error(ErrorKind::NonPositiveLambda, "lam must be positive");
    if (!space.is_space_curve()) throw Error(ErrorKind::InvalidArgument, "flatten_isotopy needs a space curve");
    const auto& f = space.fourier;
    return build_curve(f.x(), f.y(), f.z()->scaled(1.0 / lam), space.n_samples(), space.name);
}

CurvatureExtent curvature_extent(const ParametricCurve& c) {
    auto kappa = [&](double th) {
        const Jet J = c.jet(th);
        return norm(cross(J.d1, J.d2));
    };
    CurvatureExtent ext{INFINITY, 0.0};
    for (int j = 0; j < c.n_samples(); ++j)
        ext.max = std::max(ext.max, norm(cross(c.samples.d1[j], c.samples.d2[j])));
    int m = 1024;
    while (m < 32 * c.fourier.degree()) m *= 2;
    for (const auto& [th, val] : detail::periodic_minima(kappa, m)) ext.min = std::min(ext.min, val);
    if (!std::isfinite(ext.min)) ext.min = ext.max;  // constant curvature
    return ext;
}

void require_nonvanishing_curvature(const ParametricCurve& c) {
    const auto ext = curvature_extent(c);
    if (ext.min < 1e-6 * ext.max || ext.max == 0.0)
        throw Error(ErrorKind::CurvatureVanishes, "|X'×X''| drops to " + std::to_string(ext.min));
}

ParametricCurve push_off(const ParametricCurve& space, Framing framing, double delta) {
    if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
    const ParametricCurve c = as_space_curve(space);
    const auto& f = c.fourier;
    if (framing == Framing::Reeb)
        return build_curve(f.x(), f.y(), f.z()->shifted(delta), c.n_samples(), c.name + "+reeb");

    require_nonvanishing_curvature(c);
    // the normal field is not band-limited; fit it on a fine grid
    const int m = 512;
    std::vector<Vec3> pts(m);
    for (int j = 0; j < m; ++j) {
        const Jet J = c.jet(two_pi * j / m);
        const Vec3 T = (1.0 / norm(J.d1)) * J.d1;
        const Vec3 a = J.d2 - dot(J.d2, T) * T;
        pts[j] = J.p + (delta / norm(a)) * a;
    }
    return curve_from_samples(pts, m / 2 - 1, std::max(c.n_samples(), 2 * m), c.name + "+frenet");
}

ParametricCurve push_off(const LegendrianKnot& knot, Framing framing, double delta) {
    return push_off(knot.space, framing, delta);
}

}  // namespace heislink
