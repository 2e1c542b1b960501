#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "heislink/diagram.hpp"
#include "heislink/library.hpp"
#include "heislink/localization.hpp"
#include "heislink/quadrature.hpp"

namespace heislink {

nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const Crossing& c);
nlohmann::json to_json(const IntegralResult& r);
nlohmann::json to_json(const LocalizationReport& r);
nlohmann::json to_json(const LambdaScan& s);
nlohmann::json to_json(const CalcLemmaTable& t);
nlohmann::json error_json(const Error& e);

struct InvariantOptions {
    std::vector<double> lambdas{8.0, 16.0};
    std::vector<double> hbars{0.0, 1.0};
    std::vector<double> ts{1.0};
    QuadratureConfig quad;
    bool topological = false;
    bool localize = true;
    double localize_lambda = 16.0;
    double tol = 0.05;
};

// Full report for one curve; sub-computations that fail leave null fields and an entry in "errors".
nlohmann::json invariant_report(const CurveInput& input, const InvariantOptions& opts);

}  // namespace heislink
