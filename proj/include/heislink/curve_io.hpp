#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "heislink/library.hpp"

namespace heislink {

// Curve file:
//   { "name": s, "coeffs_x": [[k, re, im], ...], "coeffs_y": [...], "coeffs_z": [...] | null,
//     "z0": r, "n_samples": n }
// or { "name": s, "components": [curve, curve, ...] } for links.
CurveInput curve_from_json(const nlohmann::json& j);
nlohmann::json curve_to_json(const ParametricCurve& c, double z0 = 0.0);

// "builtin:<name>" or a path to a curve file; n_samples > 0 overrides the file value
CurveInput load_curve(const std::string& ref, int n_samples = 0);

}  // namespace heislink
