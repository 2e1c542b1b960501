#include "heislink/library.hpp"

#include <cmath>
#include <map>

#include <boost/math/tools/roots.hpp>

#include "heislink/errors.hpp"

namespace heislink {

namespace {

const cplx I(0.0, 1.0);

std::pair<FourierSeries, FourierSeries> split_complex(const std::vector<std::pair<int, cplx>>& modes) {
    std::map<int, cplx> a;
    int K = 0;
    for (const auto& [k, c] : modes) {
        a[k] += c;
        K = std::max(K, std::abs(k));
    }
    auto get = [&](int k) {
        auto it = a.find(k);
        return it == a.end() ? cplx{} : it->second;
    };
    std::vector<cplx> cx(static_cast<std::size_t>(K) + 1), cy(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) {
        const cplx ak = get(k), amk = std::conj(get(-k));
        cx[k] = 0.5 * (ak + amk);
        cy[k] = (ak - amk) / (2.0 * I);
    }
    return {FourierSeries(cx), FourierSeries(cy)};
}

// cos(kθ) and sin(kθ) as series
FourierSeries cos_k(int k, double amp = 1.0) {
    std::vector<cplx> c(static_cast<std::size_t>(k) + 1);
    c[k] = (k == 0) ? amp : 0.5 * amp;
    return FourierSeries(c);
}
FourierSeries sin_k(int k, double amp = 1.0) {
    std::vector<cplx> c(static_cast<std::size_t>(k) + 1);
    c[k] = -0.5 * amp * I;
    return FourierSeries(c);
}

double stab_area(double c) {
    const auto curve = plane_curve_from_complex({{1, 0.7}, {-1, c}, {3, 0.35}}, 64);
    const auto& x = curve.fourier.x();
    const auto& y = curve.fourier.y();
    return (x * y.derivative() - y * x.derivative()).mean();
}

struct Rot {
    double m[3][3];
};

Rot hopf_rotation() {
    // about x by 0.3, then about z by 0.2
    const double a = 0.3, b = 0.2;
    const double Rx[3][3] = {{1, 0, 0}, {0, std::cos(a), -std::sin(a)}, {0, std::sin(a), std::cos(a)}};
    const double Rz[3][3] = {{std::cos(b), -std::sin(b), 0}, {std::sin(b), std::cos(b), 0}, {0, 0, 1}};
    Rot r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r.m[i][j] += Rz[i][k] * Rx[k][j];
    return r;
}

ParametricCurve rotate(const ParametricCurve& c, const Rot& r) {
    const FourierSeries s[3] = {c.fourier.x(), c.fourier.y(), *c.fourier.z()};
    FourierSeries out[3];
    for (int i = 0; i < 3; ++i)
        out[i] = s[0].scaled(r.m[i][0]) + s[1].scaled(r.m[i][1]) + s[2].scaled(r.m[i][2]);
    return build_curve(out[0], out[1], out[2], c.n_samples(), c.name);
}

}  // namespace

ParametricCurve plane_curve_from_complex(const std::vector<std::pair<int, cplx>>& modes, int n_samples,
                                         std::string name) {
    auto [x, y] = split_complex(modes);
    return build_curve(std::move(x), std::move(y), std::nullopt, n_samples, std::move(name));
}

ParametricCurve unit_circle(int n) { return plane_curve_from_complex({{1, 1.0}}, n, "circle"); }

ParametricCurve double_circle(int n) { return plane_curve_from_complex({{2, 1.0}}, n, "double-circle"); }

ParametricCurve gerono(int n) { return build_curve(cos_k(1), sin_k(2, 0.5), std::nullopt, n, "gerono"); }

ParametricCurve lemniscate(int n) {
    return build_curve(cos_k(1).shifted(0.3), sin_k(2, 0.5).shifted(0.2), std::nullopt, n, "lemniscate");
}

ParametricCurve hypotrochoid(double a, double b, int n) {
    return plane_curve_from_complex({{1, a}, {-2, b}}, n, "hypotrochoid");
}

double stabilized_unknot_coefficient() {
    std::uintmax_t iters = 100;
    auto r = boost::math::tools::toms748_solve(stab_area, 0.5, 1.5, boost::math::tools::eps_tolerance<double>(52),
                                               iters);
    return 0.5 * (r.first + r.second);
}

ParametricCurve stabilized_unknot(int n) {
    return plane_curve_from_complex({{1, 0.7}, {-1, stabilized_unknot_coefficient()}, {3, 0.35}}, n,
                                    "stabilized-unknot");
}

ParametricCurve trefoil_space(int n) {
    return build_curve(sin_k(1) + sin_k(2, 2.0), cos_k(1) - cos_k(2, 2.0), sin_k(3, -1.0), n, "trefoil-space");
}

ParametricCurve coil(int n) { return build_curve(cos_k(1), sin_k(1), sin_k(3, 0.2), n, "coil"); }

CurvePair hopf_pair_raw(int n) {
    auto c1 = build_curve(cos_k(1), sin_k(1), FourierSeries::constant(0.0), n, "hopf-1");
    auto c2 = build_curve(cos_k(1).shifted(1.0), FourierSeries::constant(0.0), sin_k(1), n, "hopf-2");
    return {std::move(c1), std::move(c2)};
}

CurvePair hopf_pair(int n) {
    auto [c1, c2] = hopf_pair_raw(n);
    const Rot r = hopf_rotation();
    return {rotate(c1, r), rotate(c2, r)};
}

CurvePair distant_circles(int n) {
    auto c1 = build_curve(cos_k(1), sin_k(1), FourierSeries::constant(0.0), n, "circle-a");
    auto c2 = build_curve(cos_k(1).shifted(5.0), sin_k(1), FourierSeries::constant(0.0), n, "circle-b");
    return {std::move(c1), std::move(c2)};
}

std::vector<std::string> builtin_names() {
    return {"circle", "double-circle", "gerono", "lemniscate", "hypotrochoid", "stabilized-unknot",
            "trefoil-space", "coil", "hopf", "hopf-raw", "unlink"};
}

CurveInput builtin(const std::string& name, int n) {
    auto pick = [&](int dflt) { return n > 0 ? n : dflt; };
    CurveInput in;
    in.name = name;
    if (name == "circle") in.components = {unit_circle(pick(256))};
    else if (name == "double-circle") in.components = {double_circle(pick(256))};
    else if (name == "gerono") in.components = {gerono(pick(256))};
    else if (name == "lemniscate") in.components = {lemniscate(pick(256))};
    else if (name == "hypotrochoid") in.components = {hypotrochoid(std::sqrt(2.0), 1.0, pick(256))};
    else if (name == "stabilized-unknot") in.components = {stabilized_unknot(pick(256))};
    else if (name == "trefoil-space") in.components = {trefoil_space(pick(512))};
    else if (name == "coil") in.components = {coil(pick(256))};
    else if (name == "hopf" || name == "hopf-raw" || name == "unlink") {
        auto [a, b] = name == "hopf" ? hopf_pair(pick(256)) : name == "hopf-raw" ? hopf_pair_raw(pick(256))
                                                                                   : distant_circles(pick(256));
        in.components = {std::move(a), std::move(b)};
    } else {
        throw Error(ErrorKind::ParseError, "unknown builtin curve '" + name + "'");
    }
    return in;
}

}  // namespace heislink
