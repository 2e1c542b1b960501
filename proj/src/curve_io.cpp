#include "heislink/curve_io.hpp"

#include <fstream>
#include <sstream>

#include "heislink/errors.hpp"

namespace heislink {

namespace {

using nlohmann::json;

FourierSeries series_from_json(const json& arr, const char* field) {
    if (!arr.is_array()) throw Error(ErrorKind::ParseError, std::string(field) + " must be an array");
    std::vector<std::pair<int, cplx>> modes;
    for (const auto& row : arr) {
        if (!row.is_array() || row.size() < 2 || row.size() > 3)
            throw Error(ErrorKind::ParseError, std::string(field) + " rows must be [k, re, im]");
        const int k = row.at(0).get<int>();
        const double re = row.at(1).get<double>();
        const double im = row.size() == 3 ? row.at(2).get<double>() : 0.0;
        modes.emplace_back(k, cplx(re, im));
    }
    return FourierSeries::from_modes(modes);
}

json series_to_json(const FourierSeries& s) {
    json arr = json::array();
    for (int k = 0; k <= s.degree(); ++k) {
        const cplx c = s.coeff(k);
        if (c == cplx{}) continue;
        arr.push_back({k, c.real(), c.imag()});
    }
    return arr;
}

ParametricCurve component_from_json(const json& j, int n_override, double& z0) {
    const std::string name = j.value("name", std::string{});
    auto x = series_from_json(j.at("coeffs_x"), "coeffs_x");
    auto y = series_from_json(j.at("coeffs_y"), "coeffs_y");
    std::optional<FourierSeries> z;
    if (j.contains("coeffs_z") && !j.at("coeffs_z").is_null()) z = series_from_json(j.at("coeffs_z"), "coeffs_z");
    z0 = j.value("z0", 0.0);
    int n = n_override > 0 ? n_override : j.value("n_samples", 256);
    return build_curve(std::move(x), std::move(y), std::move(z), n, name);
}

}  // namespace

CurveInput curve_from_json(const json& j) {
    CurveInput in;
    try {
        in.name = j.value("name", std::string{"curve"});
        if (j.contains("components")) {
            const int n = j.value("n_samples", 0);
            for (const auto& c : j.at("components")) {
                double z0 = 0.0;
                in.components.push_back(component_from_json(c, n, z0));
            }
            if (in.components.empty()) throw Error(ErrorKind::ParseError, "components is empty");
        } else {
            double z0 = 0.0;
            in.components.push_back(component_from_json(j, 0, z0));
            in.z0 = z0;
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return in;
}

json curve_to_json(const ParametricCurve& c, double z0) {
    json j;
    j["name"] = c.name;
    j["coeffs_x"] = series_to_json(c.fourier.x());
    j["coeffs_y"] = series_to_json(c.fourier.y());
    j["coeffs_z"] = c.fourier.z() ? series_to_json(*c.fourier.z()) : json(nullptr);
    j["z0"] = z0;
    j["n_samples"] = c.n_samples();
    return j;
}

CurveInput load_curve(const std::string& ref, int n_samples) {
    const std::string prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) return builtin(ref.substr(prefix.size()), n_samples);

    std::ifstream f(ref);
    if (!f) throw Error(ErrorKind::ParseError, "cannot open " + ref);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, ref + ": " + e.what());
    }
    CurveInput in = curve_from_json(j);
    if (n_samples > 0)
        for (auto& c : in.components) c = resample(c, n_samples);
    return in;
}

}  // namespace heislink
