#pragma once

#include <functional>
#include <string>
#include <vector>

#include "heislink/curve.hpp"
#include "heislink/forms.hpp"
#include "heislink/legendrian.hpp"

namespace heislink {

enum class Extrapolation { Linear, None };

struct QuadratureConfig {
    int n_grid = 256;
    std::vector<double> eps_schedule{0.08, 0.04, 0.02, 0.01};
    Extrapolation extrapolate = Extrapolation::Linear;
    double refine_until = 1e-4;
    int max_n_grid = 4096;

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    std::vector<double> per_eps_values;
    std::vector<double> eps_used;  // ε snapped to the final grid
    int grid_used = 0;
    double est_error = 0.0;
    bool converged = false;
    std::vector<std::pair<int, double>> history;  // (n_grid, value) per level
};

// Values on the uniform n×n grid, θ_i = 2πi/n for the first argument.
struct TorusIntegrand {
    std::function<double(int i, int j)> value;
    // optional: integral over |η| < ε of a model of the excised density at row φ_i
    std::function<double(int i, double eps)> excised_mass;
};
using TorusIntegrandFactory = std::function<TorusIntegrand(int n_grid)>;

// η = θ₂ − θ₁; excised grid points are those with |η| < ε, the rows |η| = ε get weight ½
IntegralResult integrate_torus(const TorusIntegrandFactory& integrand, const QuadratureConfig& config,
                               bool excise_diagonal);

IntegralResult lk_gauss(const ParametricCurve& c1, const ParametricCurve& c2, const QuadratureConfig& config = {});
IntegralResult lk_heisenberg(const ParametricCurve& c1, const ParametricCurve& c2, const HeatParams& params,
                             const QuadratureConfig& config = {});

IntegralResult slk0(const ParametricCurve& curve, const QuadratureConfig& config = {});
double total_torsion(const ParametricCurve& curve);
IntegralResult slk_tau(const ParametricCurve& curve, const QuadratureConfig& config = {});

// Self-linking integral of the heat form for a knot Legendrian w.r.t. κ.
IntegralResult slk_kappa(const LegendrianKnot& knot, const HeatParams& params, const QuadratureConfig& config = {});
// Same integral for a space curve with ż proportional to −(xẏ − yẋ), e.g. a scaled lift X_t;
// params.t multiplies Δ̂z as usual.
IntegralResult slk_kappa_curve(const ParametricCurve& space, const HeatParams& params,
                               const QuadratureConfig& config = {});

// grid size that resolves every crossing peak by at least 8 samples
int peak_resolving_grid(const ParametricCurve& space, const HeatParams& params, const QuadratureConfig& config);

struct LambdaScanRow {
    double lambda = 0.0;
    IntegralResult result;
};

struct ScalingCheck {
    double t = 0.0, lambda = 0.0;
    double scaled_curve_value = 0.0;  // X_t with (Λ, tℏ)
    double rescaled_value = 0.0;      // X with (Λ/t, ℏ)
    double difference = 0.0;
};

struct LambdaScan {
    double hbar = 0.0;
    std::vector<LambdaScanRow> rows;
    double spread = 0.0;
    std::vector<ScalingCheck> scaling;
};

LambdaScan lambda_scan(const LegendrianKnot& knot, double hbar, const std::vector<double>& lambdas,
                       const QuadratureConfig& config = {}, const std::vector<double>& t_values = {0.5});

}  // namespace heislink
