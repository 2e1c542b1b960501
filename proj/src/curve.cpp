#include "heislink/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heislink/errors.hpp"

namespace heislink {

FourierCurve::FourierCurve(FourierSeries x, FourierSeries y, std::optional<FourierSeries> z)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}

int FourierCurve::degree() const {
    int K = std::max(x_.degree(), y_.degree());
    if (z_) K = std::max(K, z_->degree());
    return K;
}

Jet FourierCurve::jet(double theta) const {
    double jx[4], jy[4], jz[4] = {0.0, 0.0, 0.0, 0.0};
    x_.eval_jet(theta, jx);
    y_.eval_jet(theta, jy);
    if (z_) z_->eval_jet(theta, jz);
    return {{jx[0], jy[0], jz[0]}, {jx[1], jy[1], jz[1]}, {jx[2], jy[2], jz[2]}, {jx[3], jy[3], jz[3]}};
}

Vec3 FourierCurve::position(double theta) const {
    return {x_.eval(theta), y_.eval(theta), z_ ? z_->eval(theta) : 0.0};
}

double ParametricCurve::diameter() const {
    // bounding-box diagonal is within √3 of the true diameter and cheap
    const auto& P = samples.pos;
    Vec3 lo = P.front(), hi = P.front();
    for (const auto& p : P) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return norm(hi - lo);
}

double ParametricCurve::max_speed() const {
    double m = 0.0;
    for (const auto& v : samples.d1) m = std::max(m, norm(v));
    return m;
}

ParametricCurve build_curve(const FourierCurve& fc, int n_samples, std::string name) {
    const int K = fc.degree();
    if (K < 1) throw Error(ErrorKind::DegenerateCurve, "curve has no nonconstant Fourier mode");
    if (n_samples < 4 * K + 4)
        throw Error(ErrorKind::InvalidArgument,
                    "n_samples=" + std::to_string(n_samples) + " below 4K+4=" + std::to_string(4 * K + 4));

    ParametricCurve c;
    c.name = std::move(name);
    c.fourier = fc;
    auto& s = c.samples;
    s.n_samples = n_samples;
    s.planar = !fc.is_space_curve();
    s.theta.resize(n_samples);
    s.pos.resize(n_samples);
    s.d1.resize(n_samples);
    s.d2.resize(n_samples);
    s.d3.resize(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        const double th = 2.0 * std::numbers::pi * j / n_samples;
        const Jet J = fc.jet(th);
        s.theta[j] = th;
        s.pos[j] = J.p;
        s.d1[j] = J.d1;
        s.d2[j] = J.d2;
        s.d3[j] = J.d3;
    }

    double vmin = INFINITY, vmax = 0.0;
    for (const auto& v : s.d1) {
        vmin = std::min(vmin, norm(v));
        vmax = std::max(vmax, norm(v));
    }
    if (vmax == 0.0 || vmin < 1e-9 * vmax)
        throw Error(ErrorKind::DegenerateCurve, "velocity vanishes (min |X'| = " + std::to_string(vmin) + ")");
    return c;
}

ParametricCurve build_curve(FourierSeries x, FourierSeries y, std::optional<FourierSeries> z, int n_samples,
                            std::string name) {
    return build_curve(FourierCurve(std::move(x), std::move(y), std::move(z)), n_samples, std::move(name));
}

ParametricCurve resample(const ParametricCurve& c, int n_samples) {
    return build_curve(c.fourier, n_samples, c.name);
}

ParametricCurve reverse_orientation(const ParametricCurve& c) {
    const auto& f = c.fourier;
    std::optional<FourierSeries> z;
    if (f.z()) z = f.z()->reversed();
    return build_curve(f.x().reversed(), f.y().reversed(), z, c.n_samples(), c.name);
}

ParametricCurve as_space_curve(const ParametricCurve& c) {
    if (c.is_space_curve()) return c;
    return build_curve(c.fourier.x(), c.fourier.y(), FourierSeries::constant(0.0), c.n_samples(), c.name);
}

ParametricCurve curve_from_samples(const std::vector<Vec3>& pos, int max_degree, int n_samples, std::string name) {
    std::vector<double> xs, ys, zs;
    xs.reserve(pos.size());
    ys.reserve(pos.size());
    zs.reserve(pos.size());
    for (const auto& p : pos) {
        xs.push_back(p.x);
        ys.push_back(p.y);
        zs.push_back(p.z);
    }
    return build_curve(FourierSeries::from_samples(xs, max_degree), FourierSeries::from_samples(ys, max_degree),
                       FourierSeries::from_samples(zs, max_degree), n_samples, std::move(name));
}

}  // namespace heislink
