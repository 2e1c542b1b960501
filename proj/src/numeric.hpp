#pragma once

// Small 1-D helpers shared by the library sources.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace heislink::detail {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// wrap to (−π, π]
inline double wrap_pi(double a) {
    a = std::remainder(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    return a;
}

// wrap to [0, 2π)
inline double wrap_2pi(double a) {
    a = std::fmod(a, two_pi);
    if (a < 0) a += two_pi;
    if (a >= two_pi) a -= two_pi;
    return a;
}

// Roots of a periodic function with sign changes on an m-point grid over [0, 2π).
inline std::vector<double> periodic_roots(const std::function<double(double)>& f, int m) {
    std::vector<double> roots;
    const double h = two_pi / m;
    double a = 0.0, fa = f(0.0);
    for (int j = 1; j <= m; ++j) {
        const double b = j * h;
        const double fb = f(b);
        if (fa == 0.0) {
            roots.push_back(wrap_2pi(a));
        } else if (fa * fb < 0.0) {
            std::uintmax_t iters = 200;
            auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                       boost::math::tools::eps_tolerance<double>(52), iters);
            roots.push_back(wrap_2pi(0.5 * (r.first + r.second)));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

// Local minima of f on a periodic m-point grid, each refined by Brent's method.
inline std::vector<std::pair<double, double>> periodic_minima(const std::function<double(double)>& f, int m) {
    std::vector<double> v(static_cast<std::size_t>(m));
    const double h = two_pi / m;
    for (int j = 0; j < m; ++j) v[j] = f(j * h);
    std::vector<std::pair<double, double>> out;
    for (int j = 0; j < m; ++j) {
        const double l = v[(j + m - 1) % m], r = v[(j + 1) % m];
        if (v[j] <= l && v[j] < r) {
            auto res = boost::math::tools::brent_find_minima(f, j * h - h, j * h + h, 50);
            out.emplace_back(wrap_2pi(res.first), res.second);
        }
    }
    return out;
}

}  // namespace heislink::detail
