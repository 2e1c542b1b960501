#include "heislink/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <thread>

#include "heislink/diagram.hpp"
#include "numeric.hpp"
#include "strip_model.hpp"

namespace heislink {

namespace {

using detail::two_pi;

double pairwise_sum(const double* a, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(a, h) + pairwise_sum(a + h, n - h);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

// Runs body(d, buffer) for every d in [0, n); each d is handled by exactly one thread, so
// results do not depend on the thread count.
template <class Body>
void for_each_diagonal(int n, Body&& body) {
    const int nt = std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), 16));
    auto worker = [&](int tid) {
        std::vector<double> buf(static_cast<std::size_t>(n));
        for (int d = tid; d < n; d += nt) body(d, buf);
    };
    if (nt == 1) {
        worker(0);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
}

struct LevelResult {
    std::vector<double> eps;
    std::vector<double> values;
    double value = 0.0;
};

std::vector<int> snap_eps(const QuadratureConfig& cfg, int n, bool need_two) {
    const double h = two_pi / n;
    std::vector<int> m;
    for (double e : cfg.eps_schedule) {
        const int k = std::max(1, static_cast<int>(std::lround(e / h)));
        if (m.empty() || k < m.back()) m.push_back(k);
    }
    if (need_two && m.size() < 2) m = {m.front() + 1, m.front()};
    for (int k : m)
        if (2 * k >= n) throw Error(ErrorKind::InvalidArgument, "diagonal strip wider than half the torus");
    return m;
}

double extrapolate_linear(double e1, double v1, double e2, double v2) { return v2 - e2 * (v1 - v2) / (e1 - e2); }

LevelResult evaluate_level(const TorusIntegrand& f, const QuadratureConfig& cfg, int n, bool excise) {
    const double h = two_pi / n;
    LevelResult out;
    std::vector<int> ms;
    if (excise) ms = snap_eps(cfg, n, cfg.extrapolate == Extrapolation::Linear);
    const int m_min = excise ? ms.back() : 0;

    std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
    for_each_diagonal(n, [&](int d, std::vector<double>& buf) {
        const int dd = std::min(d, n - d);
        if (excise && dd < m_min) return;
        for (int i = 0; i < n; ++i) buf[i] = f.value(i, (i + d) % n);
        diag[d] = pairwise_sum(buf);
    });

    if (!excise) {
        out.value = h * h * pairwise_sum(diag);
        return out;
    }
    std::vector<double> weighted(static_cast<std::size_t>(n));
    std::vector<double> rows(static_cast<std::size_t>(n));
    for (int m : ms) {
        for (int d = 0; d < n; ++d) {
            const int dd = std::min(d, n - d);
            weighted[d] = dd > m ? diag[d] : dd == m ? 0.5 * diag[d] : 0.0;
        }
        const double eps = m * h;
        double v = h * h * pairwise_sum(weighted);
        if (f.excised_mass) {
            for (int i = 0; i < n; ++i) rows[i] = f.excised_mass(i, eps);
            v += h * pairwise_sum(rows);
        }
        out.eps.push_back(eps);
        out.values.push_back(v);
    }
    const std::size_t k = out.values.size();
    if (cfg.extrapolate == Extrapolation::Linear && k >= 2)
        out.value = extrapolate_linear(out.eps[k - 2], out.values[k - 2], out.eps[k - 1], out.values[k - 1]);
    else
        out.value = out.values.back();
    return out;
}

TorusIntegrandFactory pair_factory(const ParametricCurve& c1, const ParametricCurve& c2,
                                   std::function<double(const Jet&, const Jet&)> density) {
    return [&c1, &c2, density](int n) {
        auto a = std::make_shared<ParametricCurve>(resample(c1, n));
        auto b = std::make_shared<ParametricCurve>(resample(c2, n));
        TorusIntegrand f;
        f.value = [a, b, density](int i, int j) {
            return density(a->samples.jet(static_cast<std::size_t>(i)), b->samples.jet(static_cast<std::size_t>(j)));
        };
        return f;
    };
}

void check_disjoint(const ParametricCurve& c1, const ParametricCurve& c2) {
    const auto a = resample(c1, std::max(c1.n_samples(), 512));
    const auto b = resample(c2, std::max(c2.n_samples(), 512));
    double dmin = INFINITY;
    for (const auto& p : a.samples.pos)
        for (const auto& q : b.samples.pos) dmin = std::min(dmin, norm(p - q));
    const double scale = std::max(c1.diameter(), c2.diameter());
    // sample spacing bounds how close two sampled curves can look while disjoint
    const double spacing = two_pi * std::max(a.max_speed(), b.max_speed()) / a.n_samples();
    if (dmin < 1e-12 * scale || dmin < 1e-3 * spacing)
        throw Error(ErrorKind::CoincidentPoints, "curves are not disjoint");
}

}  // namespace

namespace detail {

double StripModel::mass(const Jet& J, double eps) const {
    const Vec2 v = xy(J.d1), a = xy(J.d2);
    const double s = dot(v, v);
    const double A = cross(v, a);
    if (heisenberg) {
        if (A == 0.0) return 0.0;
        const double arg = 3.0 * (lambda_eff / c) * s / (std::abs(A) * eps);
        return arg > 700.0 ? 0.0 : -std::abs(A) / (two_pi * s) * std::exp(-arg);
    }
    const double g = J.p.x * J.d1.y - J.p.y * J.d1.x;
    const double q = J.d1.z + hbar * g;
    if (q == 0.0) return 0.0;
    const double sign = q > 0.0 ? -1.0 : 1.0;
    return sign * A / (two_pi * s) * -std::expm1(-lambda_eff * s * eps / (2.0 * std::abs(q)));
}

StripModel make_strip_model(const ParametricCurve& space, const HeatParams& p) {
    const auto& s = space.samples;
    double num = 0.0, den = 0.0, gmax = 0.0;
    for (int j = 0; j < s.n_samples; ++j) {
        const double g = s.pos[j].x * s.d1[j].y - s.pos[j].y * s.d1[j].x;
        num += -s.d1[j].z * g;
        den += g * g;
        gmax = std::max(gmax, std::abs(g));
    }
    if (den == 0.0) throw Error(ErrorKind::InvalidArgument, "curve has no area density");
    StripModel m;
    m.c = num / den;
    double resid = 0.0;
    for (int j = 0; j < s.n_samples; ++j) {
        const double g = s.pos[j].x * s.d1[j].y - s.pos[j].y * s.d1[j].x;
        resid = std::max(resid, std::abs(s.d1[j].z + m.c * g));
    }
    if (!(m.c > 0.0) || resid > 1e-8 * std::max(1.0, std::abs(m.c) * gmax))
        throw Error(ErrorKind::InvalidArgument, "curve is not Legendrian for any scaled contact form");
    m.hbar = p.hbar;
    m.lambda_eff = p.lambda / p.t;
    m.heisenberg = std::abs(p.hbar - m.c) < 1e-12 * std::max(1.0, m.c);
    return m;
}

}  // namespace detail

using detail::StripModel;
using detail::make_strip_model;

void QuadratureConfig::validate() const {
    if (n_grid < 8 || (n_grid & (n_grid - 1)) != 0)
        throw Error(ErrorKind::InvalidArgument, "n_grid must be a power of two ≥ 8");
    if (max_n_grid < n_grid) throw Error(ErrorKind::InvalidArgument, "max_n_grid below n_grid");
    if (eps_schedule.empty()) throw Error(ErrorKind::InvalidArgument, "empty eps schedule");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (!(eps_schedule[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps values must be positive");
        if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
            throw Error(ErrorKind::InvalidArgument, "eps schedule must be strictly decreasing");
    }
    if (!(refine_until > 0.0)) throw Error(ErrorKind::InvalidArgument, "refine_until must be positive");
}

IntegralResult integrate_torus(const TorusIntegrandFactory& integrand, const QuadratureConfig& config,
                               bool excise_diagonal) {
    config.validate();
    IntegralResult res;
    int n = config.n_grid;
    double prev = std::numeric_limits<double>::quiet_NaN();
    double diff = std::numeric_limits<double>::quiet_NaN();
    LevelResult level;
    for (;;) {
        level = evaluate_level(integrand(n), config, n, excise_diagonal);
        res.history.emplace_back(n, level.value);
        res.grid_used = n;
        if (!std::isnan(prev)) {
            diff = std::abs(level.value - prev);
            if (diff < config.refine_until * std::max(1.0, std::abs(level.value))) {
                res.converged = true;
                break;
            }
        }
        if (2 * n > config.max_n_grid) break;
        prev = level.value;
        n *= 2;
    }
    res.value = level.value;
    res.per_eps_values = level.values;
    res.eps_used = level.eps;
    double extrap_step = 0.0;
    if (excise_diagonal && config.extrapolate == Extrapolation::Linear && !level.values.empty())
        extrap_step = std::abs(level.value - level.values.back());
    res.est_error = (std::isnan(diff) ? 0.0 : diff) + extrap_step;
    return res;
}

IntegralResult lk_gauss(const ParametricCurve& c1, const ParametricCurve& c2, const QuadratureConfig& config) {
    check_disjoint(c1, c2);
    const auto a = as_space_curve(c1), b = as_space_curve(c2);
    return integrate_torus(pair_factory(a, b, angular_density), config, false);
}

IntegralResult lk_heisenberg(const ParametricCurve& c1, const ParametricCurve& c2, const HeatParams& params,
                             const QuadratureConfig& config) {
    params.validate();
    check_disjoint(c1, c2);
    const auto a = as_space_curve(c1), b = as_space_curve(c2);
    auto density = [params](const Jet& x, const Jet& y) { return heat_density(x, y, params); };
    return integrate_torus(pair_factory(a, b, density), config, false);
}

IntegralResult slk0(const ParametricCurve& curve, const QuadratureConfig& config) {
    const auto c = as_space_curve(curve);
    return integrate_torus(pair_factory(c, c, angular_density), config, true);
}

double total_torsion(const ParametricCurve& curve) {
    const auto c = as_space_curve(curve);
    require_nonvanishing_curvature(c);
    int m = 2048;
    while (m < 8 * c.n_samples()) m *= 2;
    std::vector<double> vals(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const Jet J = c.jet(two_pi * j / m);
        vals[j] = torsion(J) * norm(J.d1);
    }
    return pairwise_sum(vals) / m;
}

IntegralResult slk_tau(const ParametricCurve& curve, const QuadratureConfig& config) {
    const double T = total_torsion(curve);
    IntegralResult r = slk0(curve, config);
    r.value += T;
    for (auto& v : r.per_eps_values) v += T;
    for (auto& h : r.history) h.second += T;
    return r;
}

int peak_resolving_grid(const ParametricCurve& space, const HeatParams& params, const QuadratureConfig& config) {
    int n = config.n_grid;
    const auto cs = find_crossings(space);
    if (cs.empty()) return n;
    double dzmin = INFINITY;
    for (const auto& c : cs) dzmin = std::min(dzmin, c.delta_z);
    const double w_peak = std::sqrt(params.t * dzmin / params.lambda);
    const int need = 8 * static_cast<int>(std::ceil(two_pi / w_peak));
    while (n < need) n *= 2;
    if (n > config.max_n_grid)
        throw Error(ErrorKind::UnresolvedPeak, "crossing peaks need n_grid=" + std::to_string(n) +
                                                   " > max_n_grid=" + std::to_string(config.max_n_grid));
    return n;
}

IntegralResult slk_kappa_curve(const ParametricCurve& space, const HeatParams& params,
                               const QuadratureConfig& config) {
    params.validate();
    config.validate();
    if (!space.is_space_curve()) throw Error(ErrorKind::InvalidArgument, "slk_kappa needs a space curve");
    QuadratureConfig cfg = config;
    cfg.n_grid = peak_resolving_grid(space, params, config);
    const StripModel model = make_strip_model(space, params);

    TorusIntegrandFactory factory = [&space, params, model](int n) {
        auto c = std::make_shared<ParametricCurve>(resample(space, n));
        TorusIntegrand f;
        f.value = [c, params](int i, int j) {
            return heat_density(c->samples.jet(static_cast<std::size_t>(i)), c->samples.jet(static_cast<std::size_t>(j)),
                                params);
        };
        f.excised_mass = [c, model](int i, double eps) {
            return model.mass(c->samples.jet(static_cast<std::size_t>(i)), eps);
        };
        return f;
    };
    return integrate_torus(factory, cfg, true);
}

IntegralResult slk_kappa(const LegendrianKnot& knot, const HeatParams& params, const QuadratureConfig& config) {
    return slk_kappa_curve(knot.space, params, config);
}

LambdaScan lambda_scan(const LegendrianKnot& knot, double hbar, const std::vector<double>& lambdas,
                       const QuadratureConfig& config, const std::vector<double>& t_values) {
    if (lambdas.empty()) throw Error(ErrorKind::InvalidArgument, "empty lambda list");
    LambdaScan scan;
    scan.hbar = hbar;
    double lo = INFINITY, hi = -INFINITY;
    for (double L : lambdas) {
        LambdaScanRow row{L, slk_kappa(knot, {L, hbar, 1.0}, config)};
        lo = std::min(lo, row.result.value);
        hi = std::max(hi, row.result.value);
        scan.rows.push_back(std::move(row));
    }
    scan.spread = hi - lo;

    for (double t : t_values) {
        const ParametricCurve xt = scale_family(knot, t);
        bool any = false;
        auto check = [&](double L, std::optional<double> rescaled) {
            ScalingCheck sc;
            sc.t = t;
            sc.lambda = L;
            sc.scaled_curve_value = slk_kappa_curve(xt, {L, t * hbar, 1.0}, config).value;
            sc.rescaled_value = rescaled ? *rescaled : slk_kappa(knot, {L / t, hbar, 1.0}, config).value;
            sc.difference = std::abs(sc.scaled_curve_value - sc.rescaled_value);
            scan.scaling.push_back(sc);
            any = true;
        };
        for (double L : lambdas)
            for (const auto& row : scan.rows)
                if (std::abs(row.lambda - L / t) < 1e-12 * row.lambda) check(L, row.result.value);
        if (!any) check(lambdas.front(), std::nullopt);
    }
    return scan;
}

}  // namespace heislink
