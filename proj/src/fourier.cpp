#include "heislink/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <fftw3.h>

#include "heislink/errors.hpp"

namespace heislink {

FourierSeries::FourierSeries(std::vector<cplx> nonnegative) : c_(std::move(nonnegative)) {
    if (!c_.empty()) c_[0] = {c_[0].real(), 0.0};
}

FourierSeries FourierSeries::from_modes(const std::vector<std::pair<int, cplx>>& modes) {
    std::map<int, cplx> pos, neg;
    for (const auto& [k, c] : modes) {
        auto& slot = (k >= 0) ? pos[k] : neg[-k];
        slot += c;
    }
    double scale = 0.0;
    for (const auto& [k, c] : pos) scale = std::max(scale, std::abs(c));
    for (const auto& [k, c] : neg) scale = std::max(scale, std::abs(c));
    const double tol = 1e-12 * std::max(scale, 1.0);

    int K = 0;
    for (const auto& [k, c] : pos) K = std::max(K, k);
    for (const auto& [k, c] : neg) K = std::max(K, k);
    std::vector<cplx> out(static_cast<std::size_t>(K) + 1, cplx{});
    for (const auto& [k, c] : pos) out[k] = c;
    for (const auto& [k, c] : neg) {
        if (k == 0) continue;
        auto it = pos.find(k);
        if (it == pos.end()) {
            out[k] = std::conj(c);
        } else if (std::abs(it->second - std::conj(c)) > tol) {
            throw Error(ErrorKind::NonReal, "coefficient at k=-" + std::to_string(k) +
                                                " is not the conjugate of k=" + std::to_string(k));
        }
    }
    if (std::abs(out[0].imag()) > tol) throw Error(ErrorKind::NonReal, "constant mode has an imaginary part");
    // drop trailing zero modes
    while (out.size() > 1 && out.back() == cplx{}) out.pop_back();
    return FourierSeries(std::move(out));
}

FourierSeries FourierSeries::from_samples(const std::vector<double>& values, int max_degree) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
    std::vector<double> in(values);
    std::vector<fftw_complex> out(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), out.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    // the Nyquist mode of an even-length grid is ambiguous, so it is never kept
    const int K = std::min(max_degree, (n - 1) / 2);
    std::vector<cplx> c(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) c[k] = cplx(out[k][0], out[k][1]) / static_cast<double>(n);
    return FourierSeries(std::move(c));
}

FourierSeries FourierSeries::constant(double c) { return FourierSeries({cplx(c, 0.0)}); }

cplx FourierSeries::coeff(int k) const {
    const int a = std::abs(k);
    if (a >= static_cast<int>(c_.size())) return {};
    return k >= 0 ? c_[a] : std::conj(c_[a]);
}

double FourierSeries::eval(double theta, int deriv) const {
    if (c_.empty()) return 0.0;
    double acc = deriv == 0 ? c_[0].real() : 0.0;
    const cplx step = std::polar(1.0, theta);
    cplx e = 1.0;
    for (std::size_t k = 1; k < c_.size(); ++k) {
        e *= step;
        cplx factor = 1.0;
        const cplx ik(0.0, static_cast<double>(k));
        for (int d = 0; d < deriv; ++d) factor *= ik;
        acc += 2.0 * (factor * c_[k] * e).real();
    }
    return acc;
}

void FourierSeries::eval_jet(double theta, double out[4]) const {
    out[0] = out[1] = out[2] = out[3] = 0.0;
    if (c_.empty()) return;
    out[0] = c_[0].real();
    const cplx step = std::polar(1.0, theta);
    cplx e = 1.0;
    for (std::size_t k = 1; k < c_.size(); ++k) {
        e *= step;
        const double kk = static_cast<double>(k);
        const cplx v = c_[k] * e;
        // (ik)^n v for n = 0..3
        out[0] += 2.0 * v.real();
        out[1] += 2.0 * (-kk * v.imag());
        out[2] += 2.0 * (-kk * kk * v.real());
        out[3] += 2.0 * (kk * kk * kk * v.imag());
    }
}

std::vector<double> FourierSeries::sample(int n, int deriv) const {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out[j] = eval(2.0 * std::numbers::pi * j / n, deriv);
    return out;
}

FourierSeries FourierSeries::derivative() const {
    std::vector<cplx> c(c_.size());
    for (std::size_t k = 1; k < c_.size(); ++k) c[k] = cplx(0.0, static_cast<double>(k)) * c_[k];
    return FourierSeries(std::move(c));
}

FourierSeries FourierSeries::antiderivative() const {
    std::vector<cplx> c(c_.size());
    for (std::size_t k = 1; k < c_.size(); ++k) c[k] = c_[k] / cplx(0.0, static_cast<double>(k));
    return FourierSeries(std::move(c));
}

FourierSeries FourierSeries::operator*(const FourierSeries& other) const {
    if (c_.empty() || other.c_.empty()) return {};
    const int K1 = degree(), K2 = other.degree();
    const int K = K1 + K2;
    std::vector<cplx> c(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) {
        cplx s{};
        for (int a = -K1; a <= K1; ++a) {
            const int b = k - a;
            if (b < -K2 || b > K2) continue;
            s += coeff(a) * other.coeff(b);
        }
        c[k] = s;
    }
    return FourierSeries(std::move(c));
}

FourierSeries FourierSeries::operator+(const FourierSeries& other) const {
    std::vector<cplx> c(std::max(c_.size(), other.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k < c_.size()) c[k] += c_[k];
        if (k < other.c_.size()) c[k] += other.c_[k];
    }
    return FourierSeries(std::move(c));
}

FourierSeries FourierSeries::operator-(const FourierSeries& other) const { return *this + other.scaled(-1.0); }

FourierSeries FourierSeries::scaled(double s) const {
    std::vector<cplx> c(c_);
    for (auto& v : c) v *= s;
    return FourierSeries(std::move(c));
}

FourierSeries FourierSeries::shifted(double s) const {
    std::vector<cplx> c(c_);
    if (c.empty()) c.emplace_back();
    c[0] += s;
    return FourierSeries(std::move(c));
}

FourierSeries FourierSeries::reversed() const {
    std::vector<cplx> c(c_);
    for (auto& v : c) v = std::conj(v);
    return FourierSeries(std::move(c));
}

double FourierSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace heislink
