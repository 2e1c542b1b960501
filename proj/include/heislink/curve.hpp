#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heislink/fourier.hpp"
#include "heislink/vec.hpp"

namespace heislink {

// position and first three derivatives at one parameter value
struct Jet {
    Vec3 p, d1, d2, d3;
};

class FourierCurve {
public:
    FourierCurve() = default;
    FourierCurve(FourierSeries x, FourierSeries y, std::optional<FourierSeries> z = std::nullopt);

    const FourierSeries& x() const { return x_; }
    const FourierSeries& y() const { return y_; }
    const std::optional<FourierSeries>& z() const { return z_; }
    bool is_space_curve() const { return z_.has_value(); }
    int degree() const;

    // z components are 0 for plane curves
    Jet jet(double theta) const;
    Vec3 position(double theta) const;

private:
    FourierSeries x_, y_;
    std::optional<FourierSeries> z_;
};

struct SampledCurve {
    int n_samples = 0;
    std::vector<double> theta;
    std::vector<Vec3> pos, d1, d2, d3;
    bool planar = true;

    Jet jet(std::size_t j) const { return {pos[j], d1[j], d2[j], d3[j]}; }
};

// FourierCurve plus its sample tables; the space-curve type used throughout
struct ParametricCurve {
    std::string name;
    FourierCurve fourier;
    SampledCurve samples;

    Jet jet(double theta) const { return fourier.jet(theta); }
    Vec3 position(double theta) const { return fourier.position(theta); }
    int n_samples() const { return samples.n_samples; }
    bool is_space_curve() const { return fourier.is_space_curve(); }
    double diameter() const;
    double max_speed() const;
};

ParametricCurve build_curve(FourierSeries x, FourierSeries y, std::optional<FourierSeries> z, int n_samples,
                            std::string name = {});
ParametricCurve build_curve(const FourierCurve& fc, int n_samples, std::string name = {});
// same Fourier data, different sample count
ParametricCurve resample(const ParametricCurve& c, int n_samples);
// θ → −θ
ParametricCurve reverse_orientation(const ParametricCurve& c);
// treat a plane curve as a space curve with z ≡ 0
ParametricCurve as_space_curve(const ParametricCurve& c);
// fit a Fourier curve through uniform samples of a space curve
ParametricCurve curve_from_samples(const std::vector<Vec3>& pos, int max_degree, int n_samples, std::string name = {});

}  // namespace heislink
