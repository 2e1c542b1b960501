#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace heislink {

using cplx = std::complex<double>;

// Real trigonometric polynomial f(θ) = Σ_{k=-K}^{K} c_k e^{ikθ} with c_{-k} = conj(c_k).
// Only c_0..c_K are stored.
class FourierSeries {
public:
    FourierSeries() = default;
    // c_0..c_K; c_0 must be real
    explicit FourierSeries(std::vector<cplx> nonnegative);

    // Accepts (k, c_k) pairs for any sign of k; throws NonReal when the listed
    // modes contradict c_{-k} = conj(c_k) or c_0 is not real.
    static FourierSeries from_modes(const std::vector<std::pair<int, cplx>>& modes);
    // Interpolating series of degree ≤ max_degree through uniform samples θ_j = 2πj/n.
    static FourierSeries from_samples(const std::vector<double>& values, int max_degree);
    static FourierSeries constant(double c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    cplx coeff(int k) const;
    const std::vector<cplx>& coeffs() const { return c_; }

    double eval(double theta, int deriv = 0) const;
    // value and first three derivatives
    void eval_jet(double theta, double out[4]) const;
    std::vector<double> sample(int n, int deriv = 0) const;

    FourierSeries derivative() const;
    // antiderivative with zero mean; requires c_0 == 0 up to the caller's tolerance
    FourierSeries antiderivative() const;
    FourierSeries operator*(const FourierSeries& other) const;
    FourierSeries operator+(const FourierSeries& other) const;
    FourierSeries operator-(const FourierSeries& other) const;
    FourierSeries scaled(double s) const;
    FourierSeries shifted(double c) const;
    // f(−θ)
    FourierSeries reversed() const;
    double mean() const { return c_.empty() ? 0.0 : c_[0].real(); }
    double max_abs_coeff() const;

private:
    std::vector<cplx> c_;
};

}  // namespace heislink
