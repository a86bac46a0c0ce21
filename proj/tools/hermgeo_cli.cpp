// Command-line front end: metric catalog, pointwise tensor dumps, single
// identity checks, verification suites, and annulus integrals.
//
// Exit codes: 0 success / all checks passed, 1 a check or computation failed,
// 2 usage or argument errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hermgeo/hermgeo.hpp"
#include "json.hpp"

using namespace hermgeo;
using nlohmann::json;

namespace {

// ---------------------------------------------------------- small parsers ----
// complex literal: "0.8+0.1i", "2-i", "-0.3i", "1e-3", "i"
cxd parse_complex_literal(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError(1, "empty complex literal");

    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k) {
        const char c = s[k];
        if ((c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') split = k;
    }
    auto number = [&raw](std::string t) -> double {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw ParseError(1, "bad numeric part in complex literal '" + raw + "'");
        }
        if (used != t.size())
            throw ParseError(1, "trailing characters in complex literal '" + raw + "'");
        return v;
    };

    if (s.back() == 'i') {
        s.pop_back();
        if (split == std::string::npos) return cxd(0.0, number(s));
        return cxd(number(s.substr(0, split)), number(s.substr(split)));
    }
    if (split != std::string::npos)
        throw ParseError(1, "two real parts in complex literal '" + raw + "'");
    return cxd(number(s), 0.0);
}

ChartPoint parse_point(const std::string& at) {
    std::vector<cxd> z;
    std::size_t start = 0;
    while (start <= at.size()) {
        const std::size_t comma = at.find(',', start);
        const std::string piece =
            at.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        z.push_back(parse_complex_literal(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return ChartPoint{z};
}

DerivSource parse_mode(const std::string& deriv) {
    if (deriv == "analytic") return DerivSource::Analytic;
    if (deriv == "fd") return DerivSource::FiniteDifference;
    throw ParseError(1, "--deriv must be 'analytic' or 'fd'");
}

// ------------------------------------------------------------ serializers ----
json mat_json(const CMat& m) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < m.size(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json vec_json(const std::vector<cxd>& v) {
    json re = json::array(), im = json::array();
    for (const cxd& x : v) {
        re.push_back(x.real());
        im.push_back(x.imag());
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json index_convention_json() {
    json idx;
    idx["g"] = "g[i][j] pairs dz^i with dzbar^j";
    idx["g_inv"] = "sum_q g_inv[i][q] * g[k][q] = delta_{ik}";
    idx["connection_holomorphic"] = "hol[k][i][j]: lower legs (i, j) holomorphic, upper leg k";
    idx["connection_mixed"] = "mixed[k][i][j]: lower legs (ibar, j), upper leg k";
    idx["form_11"] = "coefficient of dz^i wedge dzbar^j, sqrt(-1) implicit";
    idx["form_10"] = "full coefficient of dz^i";
    return idx;
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot open output file '" + out_path + "'");
    f << text;
}

void emit_json(const json& j, const std::string& out_path) {
    write_text(j.dump(2) + "\n", out_path);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

// --------------------------------------------------------------- commands ----
struct CommonArgs {
    std::vector<std::string> metric_specs;
    std::string metric_set;
    int points = 100;
    std::uint64_t seed = 2024;
    double tol = 0.0;
    double step = 0.0;
    std::string deriv = "analytic";
    int resolution = 8;
    std::string out;
};

CheckOptions to_options(const CommonArgs& a) {
    CheckOptions o;
    o.points = a.points;
    o.seed = a.seed;
    o.mode = parse_mode(a.deriv);
    o.step = a.step;
    o.tol_override = a.tol;
    o.grid_resolution = a.resolution;
    return o;
}

std::vector<MetricPtr> resolve_metrics(const CommonArgs& a) {
    std::vector<MetricPtr> set;
    if (!a.metric_set.empty()) {
        if (a.metric_set != "default")
            throw ParseError(1, "--metric-set only knows 'default'");
        set = default_metric_set();
    }
    for (const std::string& spec : a.metric_specs) set.push_back(parse_metric_spec(spec));
    if (set.empty()) set = default_metric_set();
    return set;
}

int cmd_list_metrics(const std::string& out) {
    const auto rows = metric_catalog();
    if (!out.empty()) {
        json j = json::array();
        for (const auto& r : rows)
            j.push_back({{"spec", r.spec},
                         {"family", r.family},
                         {"dimensions", r.dimensions},
                         {"domain", r.domain}});
        emit_json(j, out);
        return 0;
    }
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    std::string text = pad("spec", 30) + pad("family", 18) + pad("dimensions", 14) + "domain\n";
    text += std::string(78, '-') + "\n";
    for (const auto& r : rows)
        text += pad(r.spec, 30) + pad(r.family, 18) + pad(r.dimensions, 14) + r.domain + "\n";
    write_text(text, "");
    return 0;
}

int cmd_tensor(const std::string& spec, const std::string& at, const CommonArgs& a,
               bool echo_conventions) {
    const MetricPtr m = parse_metric_spec(spec);
    const ChartPoint p = parse_point(at);
    if (p.n() != m->dim())
        throw ParseError(1, "--at has " + std::to_string(p.n()) + " components but metric '" +
                                spec + "' lives in dimension " + std::to_string(m->dim()));
    const DerivSource mode = parse_mode(a.deriv);

    const MetricValue mv = evaluate_metric(m, p, mode, a.step);
    const ConnectionCoeffs conn = lc_coefficients(mv);
    const LCCurvature lc = lc_curvature(m, p, mode, a.step);
    const Form11 chern = chern_ricci(mv);
    const Form11 second = second_order_form(m, p, mode, a.step);
    const Form10 adj = dbar_star_omega_gamma(mv);

    json j;
    j["metric"] = m->spec_string();
    j["at"] = vec_json(p.z);
    j["mode"] = a.deriv;
    j["g"] = mat_json(mv.g);
    j["g_inv"] = mat_json(mv.g_inv);
    j["det"] = mv.det;
    json hol = json::array(), mixed = json::array();
    for (const CMat& mk : conn.hol) hol.push_back(mat_json(mk));
    for (const CMat& mk : conn.mixed) mixed.push_back(mat_json(mk));
    j["connection"] = json{{"holomorphic", std::move(hol)}, {"mixed", std::move(mixed)}};
    j["chern_ricci"] = mat_json(chern.coeff);
    j["lc_ricci"] = mat_json(lc.ricci.coeff);
    j["second_order_form"] = mat_json(second.coeff);
    j["adjoint_form"] = vec_json(adj.a);
    j["chern_scalar"] = chern_scalar(mv);
    j["lc_scalar"] = lc.scalar;
    j["index_convention"] = index_convention_json();
    if (echo_conventions) j["conventions"] = convention_strings();
    emit_json(j, a.out);
    return 0;
}

int run_report(const SuiteReport& report, const std::string& out) {
    std::fputs(render_table(report).c_str(), stdout);
    if (!out.empty()) emit_json(to_json(report), out);
    return report.overall_pass ? 0 : 1;
}

int cmd_check(const std::string& id, const CommonArgs& a) {
    bool known = false;
    for (const CheckDef& d : check_registry()) known = known || d.id == id;
    if (!known) {
        std::string msg = "unknown check '" + id + "'; valid checks:";
        for (const CheckDef& d : check_registry()) msg += "\n  " + d.id;
        throw ParseError(1, msg);
    }
    return run_report(run_single_check(id, resolve_metrics(a), to_options(a)), a.out);
}

int cmd_suite(const std::string& name, const CommonArgs& a) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::string msg = "unknown suite '" + name + "'; valid suites:";
        for (const auto& s : names) msg += " " + s;
        throw ParseError(1, msg);
    }
    return run_report(run_suite(name, resolve_metrics(a), to_options(a)), a.out);
}

int cmd_integrate(const std::string& spec, const std::string& integrand_name,
                  const std::string& factor, double lo, double hi, bool refine,
                  const CommonArgs& a) {
    Integrand which;
    if (integrand_name == "scalar-volume")
        which = Integrand::ScalarVolume;
    else if (integrand_name == "ricci-wedge")
        which = Integrand::RicciWedge;
    else if (integrand_name == "adjoint-norm")
        which = Integrand::AdjointNormSq;
    else if (integrand_name == "factor-hessian")
        which = Integrand::FactorHessianWedge;
    else
        throw ParseError(1,
                         "--integrand must be one of scalar-volume, ricci-wedge, "
                         "adjoint-norm, factor-hessian");
    if (which == Integrand::FactorHessianWedge && factor.empty())
        throw ParseError(1, "--integrand factor-hessian needs --factor <expr>");

    const MetricPtr m = parse_metric_spec(spec);
    const DerivSource mode = parse_mode(a.deriv);
    std::unique_ptr<FieldExpr> f;
    if (!factor.empty()) f = std::make_unique<FieldExpr>(FieldExpr::parse(factor));

    json j;
    j["metric"] = m->spec_string();
    j["integrand"] = integrand_name;
    j["annulus"] = {{"lo", lo}, {"hi", hi}};
    j["resolution"] = a.resolution;

    std::string text = "metric: " + m->spec_string() + "\nintegrand: " + integrand_name +
                       " over annulus (" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "], resolution " + std::to_string(a.resolution) + "\n";
    int code = 0;
    if (refine) {
        const RefinementStudy st =
            grid_refine_study(m, which, a.resolution, lo, hi, f.get(), mode);
        json rows = json::array();
        for (const RefinementRow& row : st.rows) {
            rows.push_back({{"resolution", row.resolution}, {"value", row.value}});
            text += "R=" + std::to_string(row.resolution) + ": " + fmt(row.value) + "\n";
        }
        j["rows"] = std::move(rows);
        j["last_rel_diff"] = st.last_rel_diff;
        j["converged"] = st.converged;
        text += "last relative difference: " + fmt(st.last_rel_diff) +
                (st.converged ? " (converged)\n" : " (NOT converged)\n");
        code = st.converged ? 0 : 1;
    } else {
        const IntegrationGrid grid = IntegrationGrid::make(m->dim(), a.resolution, lo, hi);
        const double v = integrate_top_form(m, which, grid, f.get(), mode);
        j["value"] = v;
        text += "value: " + fmt(v) + "\n";
    }
    std::fputs(text.c_str(), stdout);
    if (!a.out.empty()) emit_json(j, a.out);
    return code;
}

void add_common(CLI::App* cmd, CommonArgs& a, bool with_metrics, bool with_grid) {
    if (with_metrics) {
        cmd->add_option("--metric", a.metric_specs, "metric spec (repeatable)");
        cmd->add_option("--metric-set", a.metric_set, "named working set ('default')");
    }
    cmd->add_option("--points", a.points, "sample points per check");
    cmd->add_option("--seed", a.seed, "sampling / factor seed");
    cmd->add_option("--tol", a.tol, "override every pinned tolerance");
    cmd->add_option("--step", a.step, "finite-difference step (0 = per-operator default)");
    cmd->add_option("--deriv", a.deriv, "derivative source: analytic|fd");
    if (with_grid) cmd->add_option("--resolution", a.resolution, "base grid resolution");
    cmd->add_option("--out", a.out, "write the JSON report to this file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pointwise tensors, identity checks, and annulus integrals for "
                 "hermitian metrics"};
    app.require_subcommand(1);
    std::string convention_mode;
    app.add_option("--convention", convention_mode,
                   "pass 'echo' to print the pinned sign/index conventions first");

    std::string lm_out;
    CLI::App* list_cmd = app.add_subcommand("list-metrics", "show the metric spec catalog");
    list_cmd->add_option("--out", lm_out, "write the catalog as JSON to this file");

    CommonArgs tensor_args;
    std::string tensor_metric, tensor_at;
    CLI::App* tensor_cmd =
        app.add_subcommand("tensor", "evaluate every tensor of the bundle at one point");
    tensor_cmd->add_option("--metric", tensor_metric, "metric spec")->required();
    tensor_cmd->add_option("--at", tensor_at, "point, comma-separated complex literals")
        ->required();
    add_common(tensor_cmd, tensor_args, false, false);

    CommonArgs check_args;
    std::string check_id;
    CLI::App* check_cmd = app.add_subcommand("check", "run one named identity check");
    check_cmd->add_option("id", check_id, "check identifier")->required();
    add_common(check_cmd, check_args, true, true);

    CommonArgs suite_args;
    std::string suite_name = "all";
    CLI::App* suite_cmd = app.add_subcommand("suite", "run a verification suite");
    suite_cmd->add_option("name", suite_name, "suite name (default: all)");
    add_common(suite_cmd, suite_args, true, true);

    CommonArgs int_args;
    std::string int_metric, int_integrand, int_factor;
    double int_lo = 0.5, int_hi = 1.0;
    bool int_refine = false;
    CLI::App* int_cmd =
        app.add_subcommand("integrate", "integrate a named top form over the annulus");
    int_cmd->add_option("--metric", int_metric, "metric spec")->required();
    int_cmd->add_option("--integrand", int_integrand,
                        "scalar-volume | ricci-wedge | adjoint-norm | factor-hessian")
        ->required();
    int_cmd->add_option("--factor", int_factor, "scalar field for factor-hessian");
    int_cmd->add_option("--lo", int_lo, "inner annulus radius");
    int_cmd->add_option("--hi", int_hi, "outer annulus radius");
    int_cmd->add_flag("--refine", int_refine, "run the R, 2R, 4R refinement study");
    add_common(int_cmd, int_args, false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (convention_mode == "echo")
            for (const std::string& s : convention_strings()) std::printf("%s\n", s.c_str());
        else if (!convention_mode.empty())
            throw ParseError(1, "--convention only knows 'echo'");

        if (list_cmd->parsed()) return cmd_list_metrics(lm_out);
        if (tensor_cmd->parsed())
            return cmd_tensor(tensor_metric, tensor_at, tensor_args,
                              convention_mode == "echo");
        if (check_cmd->parsed()) return cmd_check(check_id, check_args);
        if (suite_cmd->parsed()) return cmd_suite(suite_name, suite_args);
        if (int_cmd->parsed())
            return cmd_integrate(int_metric, int_integrand, int_factor, int_lo, int_hi,
                                 int_refine, int_args);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
