#include "heislink/forms.hpp"

#include <cmath>
#include <numbers>

#include "heislink/errors.hpp"

namespace heislink {

namespace {
constexpr double inv_2pi = 0.5 / std::numbers::pi;
constexpr double inv_4pi = 0.25 / std::numbers::pi;
constexpr double exponent_clamp = 700.0;
}  // namespace

void HeatParams::validate() const {
    if (!(lambda > 0.0)) throw Error(ErrorKind::NonPositiveLambda, "lambda must be positive");
    if (!(t > 0.0)) throw Error(ErrorKind::NonPositiveT, "t must be positive");
    if (!(hbar >= 0.0 && hbar <= 1.0)) throw Error(ErrorKind::InvalidArgument, "hbar must lie in [0, 1]");
}

Vec3 heisenberg_mul(Vec3 p1, Vec3 p2, double hbar) {
    return {p1.x + p2.x, p1.y + p2.y, p1.z + p2.z - hbar * (p1.x * p2.y - p2.x * p1.y)};
}

DifferenceVector heisenberg_diff(Vec3 p1, Vec3 p2, double hbar) {
    return {p2.x - p1.x, p2.y - p1.y, p2.z - p1.z + hbar * (p1.x * p2.y - p2.x * p1.y)};
}

double gaussian_form(double x, double y, double lambda) {
    return lambda * inv_2pi * std::exp(-0.5 * lambda * (x * x + y * y));
}

Vec2 transgression_form(double x, double y, double lambda) {
    const double e = inv_4pi * std::exp(-0.5 * lambda * (x * x + y * y));
    return {-e * y, e * x};
}

Vec3 retraction_sphere(Vec3 p) {
    const double r = norm(p);
    if (!(r > 0.0)) throw Error(ErrorKind::OriginInput, "retraction of the origin");
    return (1.0 / r) * p;
}

Vec2 retraction_plane(Vec3 p) {
    if (!(p.z > 0.0)) throw Error(ErrorKind::NonPositiveZ, "planar retraction needs z > 0");
    const double s = 1.0 / std::sqrt(p.z);
    return {s * p.x, s * p.y};
}

double angular_density(const Jet& a, const Jet& b) {
    // Γ = X₂ − X₁, ∂₁Γ = −Ẋ₁, ∂₂Γ = Ẋ₂
    const Vec3 G = b.p - a.p;
    const double r = norm(G);
    return inv_4pi * dot(G, cross(-a.d1, b.d1)) / (r * r * r);
}

double heat_density(const Jet& a, const Jet& b, const HeatParams& p) {
    const double u = b.p.x - a.p.x;
    const double v = b.p.y - a.p.y;
    const double dz = b.p.z - a.p.z + p.hbar * (a.p.x * b.p.y - b.p.x * a.p.y);
    if (!(dz > 0.0)) return 0.0;
    const double w = p.t * dz;
    const double arg = 0.5 * p.lambda * (u * u + v * v) / w;
    if (arg > exponent_clamp) return 0.0;

    const double u1 = -a.d1.x, u2 = b.d1.x;
    const double v1 = -a.d1.y, v2 = b.d1.y;
    // derivatives of Δ̂z; the factor t cancels in dŵ/ŵ
    const double w1 = -a.d1.z + p.hbar * (a.d1.x * b.p.y - b.p.x * a.d1.y);
    const double w2 = b.d1.z + p.hbar * (a.p.x * b.d1.y - b.d1.x * a.p.y);
    const double jac = u1 * v2 - u2 * v1;
    const double al1 = u * v1 - v * u1;
    const double al2 = u * v2 - v * u2;
    const double bracket = jac + 0.5 * (al1 * w2 - al2 * w1) / dz;
    if (bracket == 0.0) return 0.0;
    return bracket * std::exp(std::log(p.lambda * inv_2pi / w) - arg);
}

double angular_integrand(const ParametricCurve& c1, const ParametricCurve& c2, double th1, double th2) {
    const Jet a = c1.jet(th1), b = c2.jet(th2);
    const double scale = std::max(c1.diameter(), c2.diameter());
    if (norm(b.p - a.p) < 1e-12 * scale)
        throw Error(ErrorKind::CoincidentPoints, "curves meet at the sampled parameters");
    return angular_density(a, b);
}

double heat_integrand(const ParametricCurve& c1, const ParametricCurve& c2, double th1, double th2,
                      const HeatParams& p) {
    p.validate();
    return heat_density(c1.jet(th1), c2.jet(th2), p);
}

double torsion(const Jet& j) {
    const Vec3 b = cross(j.d1, j.d2);
    const double bb = dot(b, b);
    const double ref = norm(j.d1) * norm(j.d2);
    if (!(ref > 0.0) || std::sqrt(bb) < 1e-9 * ref)
        throw Error(ErrorKind::CurvatureVanishes, "|X'×X''| vanishes");
    return dot(b, j.d3) / bb;
}

double torsion(const ParametricCurve& c, double theta) { return torsion(c.jet(theta)); }

}  // namespace heislink
