#include "heislink/localization.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "numeric.hpp"
#include "strip_model.hpp"

namespace heislink {

namespace {

using detail::two_pi;

// ∫ over the disc |δ| < R of f(δ₁, δ₂), Gauss–Legendre panels in r, trapezoid in angle
template <class F>
double disc_integral(F&& f, double R, int panels = 8, int n_angle = 128) {
    using GL = boost::math::quadrature::gauss<double, 30>;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = R * p / panels, b = R * (p + 1) / panels;
        total += GL::integrate(
            [&](double r) {
                double s = 0.0;
                for (int k = 0; k < n_angle; ++k) {
                    const double phi = two_pi * k / n_angle;
                    s += f(r * std::cos(phi), r * std::sin(phi));
                }
                return r * s * two_pi / n_angle;
            },
            a, b);
    }
    return total;
}

double difference_jacobian(const ParametricCurve& c, double t1, double t2) {
    return cross(-1.0 * xy(c.jet(t1).d1), xy(c.jet(t2).d1));
}

// difference map γ(θ₂) − γ(θ₁) injective on the disc around (c1, c2)
bool injective_on_disc(const ParametricCurve& c, double c1, double c2, double R) {
    const double det0 = difference_jacobian(c, c1, c2);
    if (det0 == 0.0) return false;
    for (int i = 1; i <= 8; ++i) {
        const double r = R * i / 8;
        for (int k = 0; k < 64; ++k) {
            const double phi = two_pi * k / 64;
            if (difference_jacobian(c, c1 + r * std::cos(phi), c2 + r * std::sin(phi)) * det0 <= 0.0) return false;
        }
    }
    const int m = 256;
    double wind = 0.0;
    Vec2 prev{};
    for (int k = 0; k <= m; ++k) {
        const double phi = two_pi * k / m;
        const Vec2 p = xy(c.position(c2 + R * std::sin(phi))) - xy(c.position(c1 + R * std::cos(phi)));
        if (k > 0) wind += std::atan2(cross(prev, p), dot(prev, p));
        prev = p;
    }
    return std::abs(std::abs(wind) / two_pi - 1.0) < 1e-6;
}

double smallest_singular_value(Vec2 col1, Vec2 col2) {
    const double T = dot(col1, col1) + dot(col2, col2);
    const double D = cross(col1, col2);
    return std::sqrt(std::max(0.0, 0.5 * (T - std::sqrt(std::max(0.0, T * T - 4.0 * D * D)))));
}

double torus_distance(double a1, double a2, double b1, double b2) {
    return std::hypot(detail::wrap_pi(a1 - b1), detail::wrap_pi(a2 - b2));
}

double default_strip_width(const HeatParams& p) { return std::max(0.2, 10.0 / std::sqrt(p.lambda / p.t)); }

}  // namespace

double crossing_peak_width(const LegendrianKnot& knot, const Crossing& c, const HeatParams& p) {
    const Vec2 a = -1.0 * xy(knot.space.jet(c.theta_under).d1);
    const Vec2 b = xy(knot.space.jet(c.theta_over).d1);
    return std::sqrt(p.t * c.delta_z / p.lambda) / smallest_singular_value(a, b);
}

BallIntegral crossing_ball_integral(const LegendrianKnot& knot, const Crossing& crossing, const HeatParams& params,
                                    double radius) {
    params.validate();
    const auto& c = knot.space;
    double R = radius > 0.0 ? radius : 6.0 * crossing_peak_width(knot, crossing, params);
    const double c1 = crossing.theta_under, c2 = crossing.theta_over;
    while (!injective_on_disc(c, c1, c2, R)) {
        R *= 0.5;
        if (R < 1e-4) throw Error(ErrorKind::BallTooLarge, "difference map is not injective near crossing " +
                                                               std::to_string(crossing.id));
    }
    auto f = [&](double d1, double d2) { return heat_density(c.jet(c1 + d1), c.jet(c2 + d2), params); };
    BallIntegral out;
    out.radius = R;
    out.value = disc_integral(f, R);
    out.value_inner = disc_integral(f, 0.75 * R);
    return out;
}

double crossing_contribution(const LegendrianKnot& knot, const Crossing& crossing, const HeatParams& params,
                             double radius, const QuadratureConfig&) {
    return crossing_ball_integral(knot, crossing, params, radius).value;
}

double crossing_model_integral(const HeatParams& params, double delta_z, double radius) {
    params.validate();
    auto f = [&](double t1, double t2) {
        const Jet a{{0.0, t1, 0.0}, {0.0, 1.0, 0.0}, {}, {}};
        const Jet b{{t2, 0.0, delta_z}, {1.0, 0.0, 0.0}, {}, {}};
        return heat_density(a, b, params);
    };
    return disc_integral(f, radius, 16, 256);
}

double diagonal_leading_integrand(const LegendrianKnot& knot, double phi, double eta, const HeatParams& p) {
    p.validate();
    if (eta == 0.0) throw Error(ErrorKind::InvalidArgument, "η must be nonzero");
    const Jet J = knot.space.jet(phi);
    const Vec2 v = xy(J.d1), a = xy(J.d2);
    const double s = dot(v, v);
    const double A = cross(v, a);
    const double g = cross(xy(J.p), v);
    const double L = p.lambda / p.t;
    if (p.hbar == 1.0) {
        if (!(eta * A < 0.0)) return 0.0;
        const double arg = 3.0 * L * s / (std::abs(A) * std::abs(eta));
        if (arg > 700.0) return 0.0;
        return -3.0 * L / (two_pi * eta * eta) * std::exp(-arg);
    }
    const double c = 1.0 - p.hbar;
    if (!(eta * c * g < 0.0)) return 0.0;
    const double arg = L * s * std::abs(eta) / (2.0 * c * std::abs(g));
    if (arg > 700.0) return 0.0;
    return L * A / (2.0 * two_pi * c * g) * std::exp(-arg);
}

IntegralResult diagonal_contribution(const LegendrianKnot& knot, const HeatParams& params, double strip_width,
                                     const QuadratureConfig& config) {
    params.validate();
    const double W = strip_width > 0.0 ? strip_width : default_strip_width(params);
    for (const auto& c : find_crossings(knot.space)) {
        const double eta = std::abs(detail::wrap_pi(c.theta_over - c.theta_under));
        if (eta < W)
            throw Error(ErrorKind::StripHitsCrossing, "crossing " + std::to_string(c.id) + " has |η| = " +
                                                          std::to_string(eta) + " inside the strip");
    }
    QuadratureConfig cfg = config;
    cfg.n_grid = peak_resolving_grid(knot.space, params, config);
    const auto model = detail::make_strip_model(knot.space, params);
    const ParametricCurve& space = knot.space;
    TorusIntegrandFactory factory = [&space, params, model, W](int n) {
        auto c = std::make_shared<ParametricCurve>(resample(space, n));
        const int mW = static_cast<int>(std::lround(W * n / two_pi));
        TorusIntegrand f;
        f.value = [c, params, n, mW](int i, int j) {
            const int d = ((j - i) % n + n) % n;
            const int dd = std::min(d, n - d);
            if (dd > mW) return 0.0;
            const double v = heat_density(c->samples.jet(static_cast<std::size_t>(i)),
                                          c->samples.jet(static_cast<std::size_t>(j)), params);
            return dd == mW ? 0.5 * v : v;
        };
        f.excised_mass = [c, model](int i, double eps) {
            return model.mass(c->samples.jet(static_cast<std::size_t>(i)), eps);
        };
        return f;
    };
    return integrate_torus(factory, cfg, true);
}

double diagonal_limit(const LegendrianKnot& knot, double hbar) {
    if (hbar == 1.0) return 0.0;
    const auto& gamma = knot.gamma;
    auto dens = [&](double th) {
        const Jet J = gamma.jet(th);
        const Vec2 v = xy(J.d1);
        return cross(v, xy(J.d2)) / dot(v, v);
    };
    std::vector<double> cuts;
    for (const auto& cp : knot.certificate.morse_critical_points) cuts.push_back(cp.theta);
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    if (cuts.empty()) {
        const double g0 = cross(xy(gamma.jet(0.0).p), xy(gamma.jet(0.0).d1));
        return (g0 > 0 ? 1.0 : -1.0) * GK::integrate(dens, 0.0, two_pi, 15, 1e-13) / two_pi;
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        const double a = cuts[k];
        const double b = k + 1 < cuts.size() ? cuts[k + 1] : cuts[0] + two_pi;
        const Jet mid = gamma.jet(0.5 * (a + b));
        const double g = cross(xy(mid.p), xy(mid.d1));
        total += (g > 0 ? 1.0 : -1.0) * GK::integrate(dens, a, b, 15, 1e-13);
    }
    // 1 − ℏ > 0 on [0, 1)
    return total / two_pi;
}

Layout plan_layout(const LegendrianKnot& knot, const std::vector<Crossing>& crossings, const HeatParams& params) {
    Layout lay;
    std::vector<double> sigma, eta;
    double W = default_strip_width(params);
    for (const auto& c : crossings) {
        sigma.push_back(crossing_peak_width(knot, c, params));
        eta.push_back(std::abs(detail::wrap_pi(c.theta_over - c.theta_under)));
        W = std::min(W, eta.back() - std::sqrt(2.0) * 6.0 * sigma.back());
    }
    W = std::max(W, 0.2);
    lay.strip_width = W;
    for (std::size_t a = 0; a < crossings.size(); ++a) {
        double R = std::min(6.0 * sigma[a], (eta[a] - W) / std::sqrt(2.0));
        for (std::size_t b = 0; b < crossings.size(); ++b) {
            if (a == b) continue;
            const double d = torus_distance(crossings[a].theta_under, crossings[a].theta_over,
                                            crossings[b].theta_under, crossings[b].theta_over);
            R = std::min(R, 0.5 * d);
        }
        if (!(R > 0.0))
            throw Error(ErrorKind::StripHitsCrossing,
                        "no room for a ball around crossing " + std::to_string(crossings[a].id));
        lay.radii.push_back(R);
    }
    return lay;
}

LocalizationReport decompose(const LegendrianKnot& knot, const HeatParams& params, const QuadratureConfig& config) {
    params.validate();
    LocalizationReport rep;
    rep.params = params;
    const auto crossings = find_crossings(knot.space);
    const Layout lay = plan_layout(knot, crossings, params);
    rep.strip_width = lay.strip_width;
    for (std::size_t a = 0; a < crossings.size(); ++a) {
        const auto& c = crossings[a];
        const BallIntegral ball = crossing_ball_integral(knot, c, params, lay.radii[a]);
        CrossingContribution cc;
        cc.id = c.id;
        cc.writhe_sign = c.writhe_sign;
        cc.value = ball.value;
        cc.value_inner = ball.value_inner;
        cc.model_value = c.writhe_sign;
        cc.radius = ball.radius;
        cc.theta_under = c.theta_under;
        cc.theta_over = c.theta_over;
        rep.crossing_sum += cc.value;
        rep.crossing_contribs.push_back(cc);
    }
    const IntegralResult diag = diagonal_contribution(knot, params, lay.strip_width, config);
    rep.diagonal_contrib = diag.value;
    rep.diagonal_est_error = diag.est_error;
    rep.diagonal_limit = diagonal_limit(knot, params.hbar);
    rep.total = rep.crossing_sum + rep.diagonal_contrib;
    const IntegralResult ref = slk_kappa(knot, params, config);
    rep.slk_reference = ref.value;
    rep.slk_est_error = ref.est_error;
    rep.residual = std::abs(rep.total - rep.slk_reference);
    return rep;
}

CalcLemmaTable calc_lemma_check(LemmaProfile profile, const std::vector<double>& eps_list) {
    CalcLemmaTable tab;
    tab.profile = profile;
    const double slope = profile == LemmaProfile::Linear ? 1.0 : 2.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double eps : eps_list) {
        if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "ε must be positive");
        auto f = [&](double phi) {
            const double x = eps / (slope * phi);
            return x > 700.0 ? 0.0 : x * std::exp(-x);
        };
        // split at the boundary layer φ ~ ε
        const double cut = std::min(1.0, 50.0 * eps);
        double K = ts.integrate(f, 0.0, cut);
        if (cut < 1.0) K += ts.integrate(f, cut, 1.0);
        CalcLemmaRow row;
        row.eps = eps;
        row.K = K;
        row.bound = eps * std::abs(std::log(eps)) + eps * std::exp(-1.0);
        row.within_bound = profile == LemmaProfile::Linear ? K <= row.bound : true;
        tab.bounds_ok = tab.bounds_ok && row.within_bound;
        tab.rows.push_back(row);
    }
    auto sorted = tab.rows;
    std::sort(sorted.begin(), sorted.end(), [](const CalcLemmaRow& a, const CalcLemmaRow& b) { return a.eps < b.eps; });
    for (std::size_t k = 1; k < sorted.size(); ++k)
        if (!(sorted[k].K > sorted[k - 1].K)) tab.monotone = false;
    return tab;
}

}  // namespace heislink
