#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "heislink/curve_io.hpp"
#include "heislink/forms.hpp"
#include "heislink/report.hpp"

using namespace heislink;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, DomainFail = 1, Usage = 2, NoConvergence = 3 };

struct Globals {
    int n_grid = 256;
    int max_grid = 4096;
    int n_samples = 0;
    std::vector<double> eps{0.08, 0.04, 0.02, 0.01};
    std::vector<double> lambdas;
    std::vector<double> hbars;
    std::vector<double> ts;
    double tol = 0.05;
    double refine = 1e-4;
    bool as_json = true;
    bool as_csv = false;
    unsigned seed = 12345;
    std::string out;
};

int exit_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidArgument:
        case ErrorKind::NonPositiveT:
        case ErrorKind::NonPositiveLambda: return Usage;
        case ErrorKind::UnresolvedPeak: return NoConvergence;
        default: return DomainFail;
    }
}

QuadratureConfig quad(const Globals& g) {
    QuadratureConfig c;
    c.n_grid = g.n_grid;
    c.max_n_grid = g.max_grid;
    c.eps_schedule = g.eps;
    c.refine_until = g.refine;
    c.validate();
    return c;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + g.out);
    f << text;
}

void emit_json(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

std::string csv_preamble(const std::string& cmd, const std::string& curve, const Globals& g) {
    std::ostringstream s;
    s << "# heislink " << cmd << "\n# curve: " << curve << "\n# n_grid: " << g.n_grid
      << "\n# max_grid: " << g.max_grid << "\n# eps:";
    for (double e : g.eps) s << ' ' << e;
    s << "\n";
    return s.str();
}

double single(const std::vector<double>& v, double fallback) { return v.empty() ? fallback : v.front(); }

LegendrianKnot require_knot(const CurveInput& in) {
    if (!in.is_plane()) throw Error(ErrorKind::InvalidArgument, "expects a plane curve to lift: " + in.name);
    return legendrian_lift(in.components.front(), in.z0);
}

int cmd_validate(const Globals& g, const std::string& ref) {
    const CurveInput in = load_curve(ref, g.n_samples);
    json j = {{"name", in.name}};
    if (in.is_plane()) {
        const ValidationReport r = validate_lift(in.components.front(), in.z0);
        j["kind"] = "plane";
        j["certificate"] = to_json(r);
        emit_json(g, j);
        return r.valid ? Ok : DomainFail;
    }
    j["kind"] = in.is_link() ? "link" : "space";
    json comps = json::array();
    for (const auto& c : in.components) comps.push_back({{"name", c.name}, {"kappa_residual", check_legendrian(c)}});
    j["components"] = comps;
    emit_json(g, j);
    return Ok;
}

int cmd_diagram(const Globals& g, const std::string& ref) {
    const CurveInput in = load_curve(ref, g.n_samples);
    if (in.is_link()) {
        const LinkingDiagram d = linking_diagram(in.components[0], in.components[1]);
        json cs = json::array();
        for (const auto& c : d.crossings) cs.push_back(to_json(c));
        emit_json(g, {{"name", in.name},
                      {"crossings", cs},
                      {"c2_over_c1", d.c2_over_c1},
                      {"c1_over_c2", d.c1_over_c2},
                      {"half_total", d.half_total},
                      {"lk", d.value}});
        return Ok;
    }
    ParametricCurve space = in.components.front();
    json j = {{"name", in.name}};
    std::optional<LegendrianKnot> knot;
    if (in.is_plane()) {
        knot = require_knot(in);
        space = knot->space;
    }
    const ParametricCurve plane =
        build_curve(space.fourier.x(), space.fourier.y(), std::nullopt, space.n_samples(), space.name);
    json cs = json::array();
    for (const auto& c : find_crossings(space)) cs.push_back(to_json(c));
    j["crossings"] = cs;
    j["writhe"] = writhe(space);
    j["tb"] = knot ? json(tb_diagram(*knot)) : json(nullptr);
    const RotationNumber rc = rot_curvature(plane);
    j["rot_curvature"] = {{"raw", rc.raw}, {"rounded", rc.rounded}};
    j["rot_tangencies"] = rot_tangencies(plane);
    emit_json(g, j);
    return Ok;
}

int cmd_invariants(const Globals& g, const std::string& ref, bool topological, bool no_localize) {
    const CurveInput in = load_curve(ref, g.n_samples);
    InvariantOptions o;
    o.quad = quad(g);
    o.topological = topological;
    o.localize = !no_localize;
    o.tol = g.tol;
    if (!g.lambdas.empty()) o.lambdas = g.lambdas;
    if (!g.hbars.empty()) o.hbars = g.hbars;
    if (!g.ts.empty()) o.ts = g.ts;
    const json rep = invariant_report(in, o);
    emit_json(g, rep);
    if (rep.contains("certificate") && !rep["certificate"].is_null() && !rep["certificate"]["valid"].get<bool>())
        return DomainFail;
    return Ok;
}

int cmd_link(const Globals& g, const std::string& ref, const std::string& ref2) {
    std::vector<ParametricCurve> comps = load_curve(ref, g.n_samples).components;
    if (!ref2.empty()) {
        const auto more = load_curve(ref2, g.n_samples).components;
        comps.insert(comps.end(), more.begin(), more.end());
    }
    if (comps.size() != 2) throw Error(ErrorKind::InvalidArgument, "link needs exactly two components");
    const QuadratureConfig cfg = quad(g);
    json j;
    try {
        j["lk_diagram"] = linking_diagram(comps[0], comps[1]).value;
    } catch (const Error& e) {
        j["lk_diagram"] = nullptr;
        j["diagram_error"] = error_json(e);
    }
    const IntegralResult gauss = lk_gauss(comps[0], comps[1], cfg);
    j["lk_gauss"] = to_json(gauss);
    bool converged = gauss.converged;
    json rows = json::array();
    for (double L : g.lambdas.empty() ? std::vector<double>{4.0, 16.0} : g.lambdas)
        for (double h : g.hbars.empty() ? std::vector<double>{0.0, 1.0} : g.hbars)
            for (double t : g.ts.empty() ? std::vector<double>{1.0} : g.ts) {
                const IntegralResult r = lk_heisenberg(comps[0], comps[1], {L, h, t}, cfg);
                converged = converged && r.converged;
                json row = to_json(r);
                row["lambda"] = L;
                row["hbar"] = h;
                row["t"] = t;
                rows.push_back(row);
            }
    j["lk_heisenberg"] = rows;
    emit_json(g, j);
    return converged ? Ok : NoConvergence;
}

int cmd_selflink(const Globals& g, const std::string& ref, bool topological) {
    const CurveInput in = load_curve(ref, g.n_samples);
    const QuadratureConfig cfg = quad(g);
    IntegralResult r;
    json j = {{"name", in.name}};
    if (topological || !in.is_plane()) {
        r = slk_tau(in.components.front(), cfg);
        j["quantity"] = "slk_tau";
        j["slk0"] = to_json(slk0(in.components.front(), cfg));
        j["total_torsion"] = total_torsion(in.components.front());
    } else {
        const HeatParams p{single(g.lambdas, 16.0), single(g.hbars, 0.0), single(g.ts, 1.0)};
        r = slk_kappa(require_knot(in), p, cfg);
        j["quantity"] = "slk_kappa";
        j["lambda"] = p.lambda;
        j["hbar"] = p.hbar;
        j["t"] = p.t;
    }
    j["result"] = to_json(r);
    emit_json(g, j);
    return r.converged ? Ok : NoConvergence;
}

int cmd_sweep(const Globals& g, const std::string& ref) {
    if (g.lambdas.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs a non-empty --lambda list");
    const CurveInput in = load_curve(ref, g.n_samples);
    const LegendrianKnot knot = require_knot(in);
    const QuadratureConfig cfg = quad(g);
    const std::vector<double> hbars = g.hbars.empty() ? std::vector<double>{0.0} : g.hbars;
    const std::vector<double> ts = g.ts.empty() ? std::vector<double>{1.0} : g.ts;

    std::ostringstream s;
    s << csv_preamble("sweep", in.name, g);
    s << "# columns: lambda, hbar, t, slk_kappa value, estimated error, final grid size, error kind or empty\n";
    s << "lambda,hbar,t,value,est_error,grid,error\n";
    bool converged = true;
    for (double L : g.lambdas)
        for (double h : hbars)
            for (double t : ts) {
                s << fmt(L) << ',' << fmt(h) << ',' << fmt(t) << ',';
                try {
                    const IntegralResult r = slk_kappa(knot, {L, h, t}, cfg);
                    converged = converged && r.converged;
                    s << fmt(r.value) << ',' << fmt(r.est_error) << ',' << r.grid_used << ",\n";
                } catch (const Error& e) {
                    s << ",,," << to_string(e.kind()) << "\n";
                }
            }
    emit(g, s.str());
    return converged ? Ok : NoConvergence;
}

int cmd_localize(const Globals& g, const std::string& ref) {
    const CurveInput in = load_curve(ref, g.n_samples);
    const LegendrianKnot knot = require_knot(in);
    const HeatParams p{single(g.lambdas, 16.0), single(g.hbars, 0.0), single(g.ts, 1.0)};
    const LocalizationReport r = decompose(knot, p, quad(g));
    if (!g.as_csv) {
        json j = to_json(r);
        j["name"] = in.name;
        emit_json(g, j);
        return Ok;
    }
    std::ostringstream s;
    s << csv_preamble("localize", in.name, g);
    s << "# lambda: " << p.lambda << "\n# hbar: " << p.hbar << "\n# t: " << p.t << "\n";
    s << "# columns: piece kind, crossing id or -1, writhe sign or 0, value, ball radius or strip width\n";
    s << "piece,id,writhe_sign,value,size\n";
    for (const auto& c : r.crossing_contribs)
        s << "crossing," << c.id << ',' << c.writhe_sign << ',' << fmt(c.value) << ',' << fmt(c.radius) << "\n";
    s << "diagonal,-1,0," << fmt(r.diagonal_contrib) << ',' << fmt(r.strip_width) << "\n";
    s << "total,-1,0," << fmt(r.total) << ",\n";
    s << "slk_kappa,-1,0," << fmt(r.slk_reference) << ",\n";
    emit(g, s.str());
    return Ok;
}

int cmd_probe(const Globals& g, const std::string& ref, std::vector<double> th1, std::vector<double> th2,
              int random_samples) {
    const CurveInput in = load_curve(ref, g.n_samples);
    const LegendrianKnot knot = require_knot(in);
    const HeatParams p{single(g.lambdas, 16.0), single(g.hbars, 0.0), single(g.ts, 1.0)};
    p.validate();
    if (th1.size() != th2.size()) throw Error(ErrorKind::InvalidArgument, "--th1 and --th2 lengths differ");
    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> U(0.0, 2.0 * M_PI);
    for (int k = 0; k < random_samples; ++k) {
        th1.push_back(U(rng));
        th2.push_back(U(rng));
    }
    json rows = json::array();
    for (std::size_t k = 0; k < th1.size(); ++k) {
        const Jet a = knot.space.jet(th1[k]);
        const Jet b = knot.space.jet(th2[k]);
        json row = {{"theta1", th1[k]}, {"theta2", th2[k]}};
        row["heat"] = heat_density(a, b, p);
        double eta = std::remainder(th2[k] - th1[k], 2.0 * M_PI);
        row["leading"] = diagonal_leading_integrand(knot, th1[k], eta, p);
        try {
            row["angular"] = angular_density(a, b);
        } catch (const Error&) {
            row["angular"] = nullptr;
        }
        rows.push_back(row);
    }
    json out = {{"name", in.name}, {"lambda", p.lambda}, {"hbar", p.hbar}, {"t", p.t}, {"samples", rows}};
    if (!g.as_csv) {
        emit_json(g, out);
        return Ok;
    }
    std::ostringstream s;
    s << csv_preamble("probe", in.name, g);
    s << "# lambda: " << p.lambda << "\n# hbar: " << p.hbar << "\n# t: " << p.t << "\n";
    s << "theta1,theta2,heat,leading\n";
    for (const auto& r : rows)
        s << fmt(r["theta1"]) << ',' << fmt(r["theta2"]) << ',' << fmt(r["heat"]) << ',' << fmt(r["leading"]) << "\n";
    emit(g, s.str());
    return Ok;
}

int cmd_calc_lemma(const Globals& g, const std::string& profile, std::vector<double> eps) {
    if (eps.empty()) eps = {1e-1, 1e-2, 1e-3, 1e-4};
    LemmaProfile pr;
    if (profile == "linear")
        pr = LemmaProfile::Linear;
    else if (profile == "scaled")
        pr = LemmaProfile::Scaled;
    else
        throw Error(ErrorKind::InvalidArgument, "unknown profile " + profile);
    const CalcLemmaTable t = calc_lemma_check(pr, eps);
    if (!g.as_csv) {
        emit_json(g, to_json(t));
        return Ok;
    }
    std::ostringstream s;
    s << "# heislink calc-lemma\n# profile: " << profile << "\neps,K,bound,within_bound\n";
    for (const auto& r : t.rows) s << fmt(r.eps) << ',' << fmt(r.K) << ',' << fmt(r.bound) << ',' << r.within_bound << "\n";
    emit(g, s.str());
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg heat-form linking and self-linking invariants"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--n-grid", g.n_grid, "initial torus grid size")->check(CLI::PositiveNumber);
    app.add_option("--max-grid", g.max_grid, "largest grid tried during refinement")->check(CLI::PositiveNumber);
    app.add_option("--n-samples", g.n_samples, "override curve sample count");
    app.add_option("--eps", g.eps, "diagonal excision schedule")->delimiter(',');
    app.add_option("--lambda", g.lambdas, "Λ values")->delimiter(',');
    app.add_option("--hbar", g.hbars, "ℏ values")->delimiter(',');
    app.add_option("--t", g.ts, "contact scaling t values")->delimiter(',');
    app.add_option("--tol", g.tol, "acceptance tolerance for the main theorem check");
    app.add_option("--refine-until", g.refine, "grid refinement stopping threshold");
    app.add_flag("--json", g.as_json, "JSON output (default)");
    app.add_flag("--csv", g.as_csv, "CSV output where supported");
    app.add_option("--seed", g.seed, "seed for random probe samples");
    app.add_option("-o,--out", g.out, "write output to a file");

    std::string curve, curve2, profile = "linear";
    bool topological = false, no_localize = false;
    std::vector<double> th1, th2, lemma_eps;
    int random_samples = 0;

    auto* validate = app.add_subcommand("validate", "certificate for a curve file");
    validate->add_option("curve", curve)->required();
    auto* diagram = app.add_subcommand("diagram", "crossings, writhe, tb and rotation numbers");
    diagram->add_option("curve", curve)->required();
    auto* inv = app.add_subcommand("invariants", "full invariant report");
    inv->add_option("curve", curve)->required();
    inv->add_flag("--topological", topological, "space-curve invariants only");
    inv->add_flag("--no-localize", no_localize, "skip the localization decomposition");
    auto* link = app.add_subcommand("link", "diagram, Gauss and Heisenberg linking numbers");
    link->add_option("curve", curve)->required();
    link->add_option("curve2", curve2);
    auto* self = app.add_subcommand("selflink", "slk_kappa, or slk_tau with --topological");
    self->add_option("curve", curve)->required();
    self->add_flag("--topological", topological);
    auto* sweep = app.add_subcommand("sweep", "slk_kappa over a (Λ, ℏ, t) grid as CSV");
    sweep->add_option("curve", curve)->required();
    auto* loc = app.add_subcommand("localize", "crossing and diagonal decomposition");
    loc->add_option("curve", curve)->required();
    auto* probe = app.add_subcommand("probe", "pointwise integrand values");
    probe->add_option("curve", curve)->required();
    probe->add_option("--th1", th1)->delimiter(',');
    probe->add_option("--th2", th2)->delimiter(',');
    probe->add_option("--random", random_samples, "add random sample pairs drawn with --seed");
    auto* lemma = app.add_subcommand("calc-lemma", "K(ε) table for the calculus lemma");
    lemma->add_option("--profile", profile, "linear or scaled");
    lemma->add_option("--points", lemma_eps, "ε values")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (*validate) return cmd_validate(g, curve);
        if (*diagram) return cmd_diagram(g, curve);
        if (*inv) return cmd_invariants(g, curve, topological, no_localize);
        if (*link) return cmd_link(g, curve, curve2);
        if (*self) return cmd_selflink(g, curve, topological);
        if (*sweep) return cmd_sweep(g, curve);
        if (*loc) return cmd_localize(g, curve);
        if (*probe) return cmd_probe(g, curve, th1, th2, random_samples);
        if (*lemma) return cmd_calc_lemma(g, profile, lemma_eps);
    } catch (const Error& e) {
        std::cerr << json{{"error", error_json(e)}}.dump() << "\n";
        return exit_for(e.kind());
    }
    return Usage;
}
