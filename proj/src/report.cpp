#include "heislink/report.hpp"

#include <cmath>
#include <functional>

namespace heislink {

using nlohmann::json;

namespace {

// runs f, recording a failure under `field` instead of propagating
json guarded(json& errors, const std::string& field, const std::function<json()>& f) {
    try {
        return f();
    } catch (const Error& e) {
        json err = error_json(e);
        err["field"] = field;
        errors.push_back(err);
        return nullptr;
    }
}

}  // namespace

json error_json(const Error& e) { return {{"kind", to_string(e.kind())}, {"message", e.what()}}; }

json to_json(const ValidationReport& r) {
    json gaps = json::array();
    for (const auto& g : r.crossing_gaps) gaps.push_back({{"id", g.id}, {"delta_z", g.delta_z}});
    json crit = json::array();
    for (const auto& c : r.morse_critical_points) crit.push_back({{"theta", c.theta}, {"zddot", c.zddot}});
    json j = {{"valid", r.valid},
              {"area_residual", r.area_residual},
              {"tol_area", r.tol_area},
              {"crossing_gaps", gaps},
              {"gap_min", r.gap_min},
              {"kappa_residual", r.kappa_residual},
              {"tol_leg", r.tol_leg},
              {"morse_ok", r.morse_ok},
              {"morse_critical_points", crit},
              {"morse_tol", r.morse_tol}};
    j["reason"] = r.failure ? json(to_string(*r.failure)) : json(nullptr);
    j["message"] = r.failure ? json(r.reason) : json(nullptr);
    return j;
}

json to_json(const Crossing& c) {
    return {{"id", c.id},
            {"theta_under", c.theta_under},
            {"theta_over", c.theta_over},
            {"point", {c.point.x, c.point.y}},
            {"writhe_sign", c.writhe_sign},
            {"delta_z", c.delta_z},
            {"tangent_under", {c.tangent_under.x, c.tangent_under.y}},
            {"tangent_over", {c.tangent_over.x, c.tangent_over.y}},
            {"strand_under", c.strand_under},
            {"strand_over", c.strand_over}};
}

json to_json(const IntegralResult& r) {
    json hist = json::array();
    for (const auto& [n, v] : r.history) hist.push_back({{"grid", n}, {"value", v}});
    return {{"value", r.value},        {"per_eps", r.per_eps_values}, {"eps", r.eps_used},
            {"grid", r.grid_used},     {"est_error", r.est_error},    {"converged", r.converged},
            {"history", hist}};
}

json to_json(const LocalizationReport& r) {
    json cs = json::array();
    for (const auto& c : r.crossing_contribs)
        cs.push_back({{"id", c.id},
                      {"writhe_sign", c.writhe_sign},
                      {"value", c.value},
                      {"value_inner_radius", c.value_inner},
                      {"model_value", c.model_value},
                      {"radius", c.radius},
                      {"theta_under", c.theta_under},
                      {"theta_over", c.theta_over}});
    return {{"lambda", r.params.lambda},
            {"hbar", r.params.hbar},
            {"t", r.params.t},
            {"crossing_contribs", cs},
            {"crossing_sum", r.crossing_sum},
            {"diagonal_contrib", r.diagonal_contrib},
            {"diagonal_est_error", r.diagonal_est_error},
            {"diagonal_limit", r.diagonal_limit},
            {"strip_width", r.strip_width},
            {"total", r.total},
            {"slk_reference", r.slk_reference},
            {"slk_est_error", r.slk_est_error},
            {"residual", r.residual}};
}

json to_json(const LambdaScan& s) {
    json rows = json::array();
    for (const auto& r : s.rows) {
        json j = to_json(r.result);
        j["lambda"] = r.lambda;
        rows.push_back(j);
    }
    json sc = json::array();
    for (const auto& c : s.scaling)
        sc.push_back({{"t", c.t},
                      {"lambda", c.lambda},
                      {"scaled_curve_value", c.scaled_curve_value},
                      {"rescaled_value", c.rescaled_value},
                      {"difference", c.difference}});
    return {{"hbar", s.hbar}, {"rows", rows}, {"spread", s.spread}, {"scaling", sc}};
}

json to_json(const CalcLemmaTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"eps", r.eps}, {"K", r.K}, {"bound", r.bound}, {"within_bound", r.within_bound}});
    return {{"profile", t.profile == LemmaProfile::Linear ? "linear" : "scaled"},
            {"rows", rows},
            {"monotone", t.monotone},
            {"bounds_ok", t.bounds_ok}};
}

json invariant_report(const CurveInput& input, const InvariantOptions& opts) {
    json rep;
    json errors = json::array();
    rep["name"] = input.name;
    if (input.is_link()) throw Error(ErrorKind::InvalidArgument, "invariants expects a single curve");

    const ParametricCurve& curve = input.components.front();
    const bool legendrian = input.is_plane() && !opts.topological;
    rep["kind"] = legendrian ? "legendrian" : "space";

    std::optional<LegendrianKnot> knot;
    ParametricCurve space = curve;
    if (input.is_plane()) {
        const ValidationReport cert = validate_lift(curve, input.z0);
        rep["certificate"] = to_json(cert);
        if (!cert.valid) {
            rep["errors"] = json::array({{{"field", "certificate"},
                                          {"kind", to_string(*cert.failure)},
                                          {"message", cert.reason}}});
            return rep;
        }
        knot = legendrian_lift(curve, input.z0);
        space = knot->space;
    } else {
        rep["certificate"] = nullptr;
    }

    const ParametricCurve gamma =
        build_curve(space.fourier.x(), space.fourier.y(), std::nullopt, space.n_samples(), space.name);
    rep["crossings"] = guarded(errors, "crossings", [&] {
        json cs = json::array();
        for (const auto& c : find_crossings(space)) cs.push_back(to_json(c));
        return cs;
    });
    rep["writhe"] = guarded(errors, "writhe", [&] { return json(writhe(space)); });
    rep["tb"] = knot ? guarded(errors, "tb", [&] { return json(tb_diagram(*knot)); }) : json(nullptr);
    rep["rot_curvature"] = guarded(errors, "rot_curvature", [&] {
        const auto r = rot_curvature(gamma);
        return json{{"raw", r.raw}, {"rounded", r.rounded}};
    });
    rep["rot_tangencies"] = guarded(errors, "rot_tangencies", [&] { return json(rot_tangencies(gamma)); });

    rep["slk0"] = guarded(errors, "slk0", [&] { return to_json(slk0(space, opts.quad)); });
    rep["total_torsion"] = guarded(errors, "total_torsion", [&] { return json(total_torsion(space)); });
    rep["slk_tau"] = guarded(errors, "slk_tau", [&] { return to_json(slk_tau(space, opts.quad)); });

    if (!legendrian) {
        rep["slk_kappa"] = nullptr;
        rep["localization"] = nullptr;
        rep["main_theorem_check"] = nullptr;
        rep["errors"] = errors;
        return rep;
    }

    json table = json::array();
    for (double L : opts.lambdas)
        for (double h : opts.hbars)
            for (double t : opts.ts) {
                json row = guarded(errors, "slk_kappa", [&] {
                    json j = to_json(slk_kappa(*knot, {L, h, t}, opts.quad));
                    j.erase("history");
                    return j;
                });
                if (row.is_null()) row = json::object({{"value", nullptr}});
                row["lambda"] = L;
                row["hbar"] = h;
                row["t"] = t;
                table.push_back(row);
            }
    rep["slk_kappa"] = table;

    if (opts.localize) {
        json loc = json::array();
        for (double h : opts.hbars) {
            json r = guarded(errors, "localization",
                             [&] { return to_json(decompose(*knot, {opts.localize_lambda, h, 1.0}, opts.quad)); });
            if (!r.is_null()) loc.push_back(r);
        }
        rep["localization"] = loc;
    } else {
        rep["localization"] = nullptr;
    }

    json checks = json::array();
    if (rep["tb"].is_number_integer() && rep["rot_tangencies"].is_number_integer()) {
        const int tb = rep["tb"].get<int>();
        const int rot = rep["rot_tangencies"].get<int>();
        for (const auto& row : table) {
            if (row["value"].is_null()) continue;
            const double h = row["hbar"].get<double>();
            const bool heis = h == 1.0;
            const double predicted = heis ? tb : tb - rot;
            const double measured = row["value"].get<double>();
            checks.push_back({{"branch", heis ? "hbar=1" : "hbar!=1"},
                              {"lambda", row["lambda"]},
                              {"hbar", h},
                              {"t", row["t"]},
                              {"predicted", predicted},
                              {"measured", measured},
                              {"sign_weighted_prediction", tb + diagonal_limit(*knot, h)},
                              {"pass", std::abs(measured - predicted) < opts.tol}});
        }
    }
    rep["main_theorem_check"] = checks;
    rep["errors"] = errors;
    return rep;
}

}  // namespace heislink
