#include "heislink/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "numeric.hpp"

namespace heislink {

namespace {

using detail::two_pi;

struct RawHit {
    double sa, sb;
};

int polygon_size(const FourierCurve& a, const FourierCurve& b, const DiagramOptions& opts) {
    const int K = std::max(a.degree(), b.degree());
    int m = opts.min_polygon;
    while (m < 32 * K) m *= 2;
    return m;
}

std::vector<Vec2> polygon(const FourierCurve& c, int m) {
    std::vector<Vec2> p(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) p[j] = xy(c.position(two_pi * j / m));
    return p;
}

// Newton on γa(sa) − γb(sb) = 0; returns false when it does not converge.
bool newton_refine(const FourierCurve& a, const FourierCurve& b, double& sa, double& sb, double tol) {
    for (int it = 0; it < 60; ++it) {
        const Jet ja = a.jet(sa), jb = b.jet(sb);
        const Vec2 F = xy(ja.p) - xy(jb.p);
        if (norm(F) < tol) return true;
        // J = [γ̇a, −γ̇b]
        const Vec2 u = xy(ja.d1), v = -1.0 * xy(jb.d1);
        const double det = cross(u, v);
        if (det == 0.0) return false;
        const double da = cross(F, v) / det;
        const double db = cross(u, F) / det;
        sa -= da;
        sb -= db;
    }
    const Vec2 F = xy(a.position(sa)) - xy(b.position(sb));
    return norm(F) < 1e3 * tol;
}

std::vector<RawHit> intersect(const FourierCurve& a, const FourierCurve& b, bool self, double diam,
                              const DiagramOptions& opts) {
    const int m = polygon_size(a, b, opts);
    const auto pa = polygon(a, m);
    const auto pb = self ? pa : polygon(b, m);
    const double h = two_pi / m;

    double cell = 0.0;
    for (int j = 0; j < m; ++j) {
        cell = std::max(cell, norm(pa[(j + 1) % m] - pa[j]));
        cell = std::max(cell, norm(pb[(j + 1) % m] - pb[j]));
    }
    cell = std::max(cell, 1e-12 * diam);

    // spatial hash of segment bounding boxes
    auto key = [](long ix, long iy) { return (ix * 73856093L) ^ (iy * 19349663L); };
    std::unordered_map<long, std::vector<int>> grid;
    auto cells_of = [&](const std::vector<Vec2>& p, int j, auto&& visit) {
        const Vec2 s = p[j], e = p[(j + 1) % m];
        const long x0 = static_cast<long>(std::floor(std::min(s.x, e.x) / cell));
        const long x1 = static_cast<long>(std::floor(std::max(s.x, e.x) / cell));
        const long y0 = static_cast<long>(std::floor(std::min(s.y, e.y) / cell));
        const long y1 = static_cast<long>(std::floor(std::max(s.y, e.y) / cell));
        for (long ix = x0; ix <= x1; ++ix)
            for (long iy = y0; iy <= y1; ++iy) visit(key(ix, iy));
    };
    for (int j = 0; j < m; ++j) cells_of(pa, j, [&](long k) { grid[k].push_back(j); });

    std::set<std::pair<int, int>> tested;
    std::vector<RawHit> hits;
    const double tol = 1e-13 * std::max(diam, 1e-300);
    for (int jb = 0; jb < m; ++jb) {
        cells_of(pb, jb, [&](long k) {
            auto it = grid.find(k);
            if (it == grid.end()) return;
            for (int ja : it->second) {
                if (self) {
                    if (ja >= jb) continue;
                    const int gap = std::min((jb - ja + m) % m, (ja - jb + m) % m);
                    if (gap <= 1) continue;
                }
                if (!tested.insert({ja, jb}).second) continue;
                const Vec2 P = pa[ja], d = pa[(ja + 1) % m] - P;
                const Vec2 Q = pb[jb], e = pb[(jb + 1) % m] - Q;
                const double det = cross(d, e);
                if (std::abs(det) < 1e-300) continue;
                const Vec2 w = Q - P;
                const double s = cross(w, e) / det;
                const double u = cross(w, d) / det;
                if (s < -0.05 || s > 1.05 || u < -0.05 || u > 1.05) continue;
                double sa = (ja + s) * h, sb = (jb + u) * h;
                if (!newton_refine(a, b, sa, sb, tol)) continue;
                hits.push_back({detail::wrap_2pi(sa), detail::wrap_2pi(sb)});
            }
        });
    }

    // dedupe (and drop diagonal solutions of the self problem)
    std::vector<RawHit> out;
    for (auto hit : hits) {
        if (self) {
            if (std::abs(detail::wrap_pi(hit.sa - hit.sb)) < 1e-6) continue;
            if (hit.sa > hit.sb) std::swap(hit.sa, hit.sb);
        }
        const bool dup = std::any_of(out.begin(), out.end(), [&](const RawHit& o) {
            return std::abs(detail::wrap_pi(o.sa - hit.sa)) < 1e-7 && std::abs(detail::wrap_pi(o.sb - hit.sb)) < 1e-7;
        });
        if (!dup) out.push_back(hit);
    }
    std::sort(out.begin(), out.end(), [](const RawHit& l, const RawHit& r) { return l.sa < r.sa; });
    return out;
}

Vec2 unit(Vec2 v) { return (1.0 / norm(v)) * v; }

Crossing make_crossing(const FourierCurve& a, const FourierCurve& b, const RawHit& hit, bool heights, int ia,
                       int ib, const DiagramOptions& opts) {
    const Jet ja = a.jet(hit.sa), jb = b.jet(hit.sb);
    const Vec2 ta = unit(xy(ja.d1)), tb = unit(xy(jb.d1));
    if (std::abs(cross(ta, tb)) < std::sin(opts.cross_angle_min))
        throw Error(ErrorKind::TangentialCrossing,
                    "strands at θ=" + std::to_string(hit.sa) + ", " + std::to_string(hit.sb) + " are nearly tangent");
    Crossing c;
    c.point = 0.5 * (xy(ja.p) + xy(jb.p));
    bool a_over = false;
    if (heights) a_over = ja.p.z > jb.p.z;
    if (a_over) {
        c.theta_over = hit.sa;
        c.theta_under = hit.sb;
        c.tangent_over = ta;
        c.tangent_under = tb;
        c.strand_over = ia;
        c.strand_under = ib;
    } else {
        c.theta_over = hit.sb;
        c.theta_under = hit.sa;
        c.tangent_over = tb;
        c.tangent_under = ta;
        c.strand_over = ib;
        c.strand_under = ia;
    }
    if (heights) {
        c.delta_z = std::abs(ja.p.z - jb.p.z);
        c.writhe_sign = cross(c.tangent_over, c.tangent_under) > 0 ? 1 : -1;
    }
    return c;
}

}  // namespace

std::vector<Crossing> find_crossings(const ParametricCurve& curve, const DiagramOptions& opts) {
    const double diam = curve.diameter();
    const auto hits = intersect(curve.fourier, curve.fourier, true, diam, opts);
    std::vector<Crossing> out;
    for (const auto& hit : hits) {
        out.push_back(make_crossing(curve.fourier, curve.fourier, hit, curve.is_space_curve(), 0, 0, opts));
        out.back().id = static_cast<int>(out.size()) - 1;
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (norm(out[i].point - out[j].point) < 1e-7 * diam)
                throw Error(ErrorKind::TriplePoint, "more than two strands meet near (" +
                                                        std::to_string(out[i].point.x) + ", " +
                                                        std::to_string(out[i].point.y) + ")");
    return out;
}

int writhe(const std::vector<Crossing>& crossings) {
    int w = 0;
    for (const auto& c : crossings) {
        if (c.writhe_sign == 0) throw Error(ErrorKind::InvalidArgument, "writhe needs height information");
        w += c.writhe_sign;
    }
    return w;
}

int writhe(const ParametricCurve& space, const DiagramOptions& opts) {
    if (!space.is_space_curve()) throw Error(ErrorKind::InvalidArgument, "writhe needs a space curve");
    const auto cs = find_crossings(space, opts);
    double zext = 0.0;
    {
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& p : space.samples.pos) {
            lo = std::min(lo, p.z);
            hi = std::max(hi, p.z);
        }
        zext = hi - lo;
    }
    for (const auto& c : cs)
        if (c.delta_z <= 1e-12 * std::max(zext, 1e-300))
            throw Error(ErrorKind::CrossingDegenerate, "strands meet in space at crossing " + std::to_string(c.id));
    return writhe(cs);
}

int tb_diagram(const LegendrianKnot& knot, const DiagramOptions& opts) { return writhe(knot.space, opts); }

RotationNumber rot_curvature(const ParametricCurve& gamma, double tol) {
    const auto& s = gamma.samples;
    double sum = 0.0;
    for (int j = 0; j < s.n_samples; ++j) {
        const Vec2 v = xy(s.d1[j]), a = xy(s.d2[j]);
        sum += cross(v, a) / dot(v, v);
    }
    RotationNumber r;
    r.raw = sum / s.n_samples;  // (1/2π)·(2π/N)·Σ
    r.rounded = static_cast<int>(std::lround(r.raw));
    if (std::abs(r.raw - r.rounded) > tol)
        throw Error(ErrorKind::NotNearInteger,
                    "total curvature / 2π = " + std::to_string(r.raw) + "; increase n_samples");
    return r;
}

int rot_tangencies(const ParametricCurve& gamma) {
    const auto dx = gamma.fourier.x().derivative();
    const auto ddx = dx.derivative();
    const auto dy = gamma.fourier.y().derivative();
    int m = 1024;
    while (m < 32 * gamma.fourier.degree()) m *= 2;
    double scale = 0.0;
    for (const auto& a : gamma.samples.d2) scale = std::max(scale, norm(xy(a)));

    auto fx = [&](double th) { return dx.eval(th); };
    int count = 0;
    for (double th : detail::periodic_roots(fx, m)) {
        if (dy.eval(th) <= 0.0) continue;
        const double xdd = ddx.eval(th);
        if (std::abs(xdd) < 1e-8 * scale)
            throw Error(ErrorKind::DegenerateTangency, "vertical tangency at θ=" + std::to_string(th) + " is not simple");
        count += xdd < 0.0 ? 1 : -1;
    }
    // zeros of ẋ that touch without changing sign
    auto fx2 = [&](double th) { return dx.eval(th) * dx.eval(th); };
    double vmax = gamma.max_speed();
    for (const auto& [th, val] : detail::periodic_minima(fx2, m)) {
        if (std::sqrt(val) < 1e-9 * vmax && dy.eval(th) > 0.0 && std::abs(ddx.eval(th)) < 1e-6 * scale)
            throw Error(ErrorKind::DegenerateTangency, "double zero of ẋ at θ=" + std::to_string(th));
    }
    return count;
}

LinkingDiagram linking_diagram(const ParametricCurve& c1, const ParametricCurve& c2, const DiagramOptions& opts) {
    if (!c1.is_space_curve() || !c2.is_space_curve())
        throw Error(ErrorKind::InvalidArgument, "linking_diagram needs space curves");
    for (const auto* c : {&c1, &c2}) {
        double vmin = INFINITY;
        int m = 4096;
        for (int j = 0; j < m; ++j) vmin = std::min(vmin, norm(xy(c->jet(two_pi * j / m).d1)));
        if (vmin < 1e-6 * c->max_speed())
            throw Error(ErrorKind::ProjectionDegenerate, "xy-projection of a component is not an immersion");
    }
    const double diam = std::max(c1.diameter(), c2.diameter());
    const auto hits = intersect(c1.fourier, c2.fourier, false, diam, opts);

    LinkingDiagram out;
    int total = 0;
    for (const auto& hit : hits) {
        Crossing c;
        try {
            c = make_crossing(c1.fourier, c2.fourier, hit, true, 0, 1, opts);
        } catch (const Error& e) {
            throw Error(ErrorKind::ProjectionDegenerate, e.what());
        }
        if (c.delta_z < 1e-12 * diam) throw Error(ErrorKind::ProjectionDegenerate, "the curves intersect");
        c.id = static_cast<int>(out.crossings.size());
        if (c.strand_over == 1)
            out.c2_over_c1 += c.writhe_sign;
        else
            out.c1_over_c2 += c.writhe_sign;
        total += c.writhe_sign;
        out.crossings.push_back(c);
    }
    if (total % 2 != 0 || out.c2_over_c1 != out.c1_over_c2 || total / 2 != out.c2_over_c1)
        throw Error(ErrorKind::ProjectionDegenerate, "diagrammatic linking sums disagree (" +
                                                         std::to_string(out.c2_over_c1) + ", " +
                                                         std::to_string(out.c1_over_c2) + ", " +
                                                         std::to_string(total) + "/2)");
    out.half_total = total / 2;
    out.value = out.c2_over_c1;
    return out;
}

}  // namespace heislink
