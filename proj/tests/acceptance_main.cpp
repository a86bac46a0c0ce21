// Acceptance gate: runs every headline property at its pinned tolerance and
// prints one pass/fail line per criterion.  Exit code 0 iff all pass.
//
// Tolerances and runtime budgets are fixed in this file on purpose — loosening
// one is a visible diff, not a config tweak.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hermgeo/hermgeo.hpp"

namespace {

using hermgeo::CheckOptions;
using hermgeo::ChartPoint;
using hermgeo::DerivSource;
using hermgeo::MetricPtr;
using hermgeo::SuiteReport;
using hermgeo::cxd;

// largest residual over the records that actually ran
double suite_max(const SuiteReport& rep) {
    double m = 0.0;
    for (const auto& r : rep.records)
        if (r.status == "ran") m = std::max(m, r.max_residual);
    return m;
}

bool suite_pass(const SuiteReport& rep) { return rep.overall_pass; }

// the ten-metric sweep named by the cross-family criteria: the five catalog
// families plus five seeded conformal rescalings over rotating bases
std::vector<MetricPtr> full_sweep() {
    std::vector<MetricPtr> ms = {
        hermgeo::make_flat(2),
        hermgeo::conformal_flat(2, "x1"),
        hermgeo::make_hopf_standard(2),
        hermgeo::make_hopf_perturbed(2),
        hermgeo::make_fubini_study(2),
    };
    const std::vector<MetricPtr> bases = {
        hermgeo::make_flat(2),
        hermgeo::make_hopf_standard(2),
        hermgeo::make_hopf_perturbed(2),
    };
    const std::vector<hermgeo::FieldExpr> fs =
        hermgeo::seeded_conformal_factors(2024, 2, 5);
    for (std::size_t k = 0; k < fs.size(); ++k)
        ms.push_back(hermgeo::conformal_rescale(bases[k % bases.size()], fs[k]));
    return ms;
}

struct Criterion {
    std::string label;
    double budget_seconds = 0.0;  // 0 = no budget
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

void c1(Criterion& c) {
    const std::vector<MetricPtr> ms = {hermgeo::make_hopf_perturbed(2),
                                       hermgeo::make_hopf_perturbed(3)};
    CheckOptions o;
    o.points = 100;
    const SuiteReport analytic = hermgeo::run_single_check("hopf-lc-ricci-flat", ms, o);
    o.mode = DerivSource::FiniteDifference;
    const SuiteReport fd = hermgeo::run_single_check("hopf-lc-ricci-flat", ms, o);
    const double ra = suite_max(analytic);
    const double rf = suite_max(fd);
    c.pass = ra <= 1e-6 && rf <= 1e-4;
    c.detail = "n=2,3, 100 pts; analytic " + fmt(ra) + " <= 1e-06, fd " + fmt(rf) +
               " <= 1e-04";
}

void c2(Criterion& c) {
    CheckOptions o;
    o.points = 100;
    const SuiteReport rep = hermgeo::run_single_check("ricci-identity", full_sweep(), o);
    const double r = suite_max(rep);
    c.pass = r <= 1e-5;
    c.detail = "10 metrics, 100 pts; max " + fmt(r) + " <= 1e-05";
}

void c3(Criterion& c) {
    CheckOptions o;
    o.points = 100;
    const std::vector<MetricPtr> ms = full_sweep();
    const SuiteReport rep = hermgeo::run_single_check("scalar-identity", ms, o);
    const double rs = suite_max(rep);

    // the two directed second-order inner products against omega must agree
    double ri = 0.0;
    for (const MetricPtr& m : ms) {
        const auto pts =
            hermgeo::sample_points(o.seed, m->sampling_region(), m->dim(), o.points);
        for (const ChartPoint& p : pts) {
            const hermgeo::MetricValue mv = hermgeo::evaluate_metric(m, p);
            const cxd lhs =
                hermgeo::inner_with_omega(hermgeo::par_par_star_form(m, p), mv);
            const cxd rhs =
                hermgeo::inner_with_omega(hermgeo::dbar_dbar_star_form(m, p), mv);
            ri = std::max(ri, std::abs(lhs - rhs));
        }
    }
    c.pass = rs <= 1e-5 && ri <= 1e-5;
    c.detail = "scalar relation " + fmt(rs) + " <= 1e-05, inner-product equality " +
               fmt(ri) + " <= 1e-05";
}

void c4(Criterion& c) {
    CheckOptions o;
    o.points = 100;
    const SuiteReport routes =
        hermgeo::run_single_check("adjoint-routes", full_sweep(), o);
    const SuiteReport closed = hermgeo::run_single_check(
        "hopf-adjoint-closed-form",
        {hermgeo::make_hopf_perturbed(2), hermgeo::make_hopf_perturbed(3)}, o);
    const double rr = suite_max(routes);
    const double rc = suite_max(closed);
    c.pass = rr <= 1e-6 && rc <= 1e-6;
    c.detail = "route agreement " + fmt(rr) +
               " <= 1e-06, flattened-family closed form " + fmt(rc) + " <= 1e-06";
}

void c5(Criterion& c) {
    std::vector<MetricPtr> pairs;
    const std::vector<MetricPtr> bases = {hermgeo::make_flat(2),
                                          hermgeo::make_hopf_standard(2)};
    const std::vector<hermgeo::FieldExpr> fs =
        hermgeo::seeded_conformal_factors(2024, 2, 5);
    for (const MetricPtr& b : bases)
        for (const hermgeo::FieldExpr& f : fs)
            pairs.push_back(hermgeo::conformal_rescale(b, f));

    CheckOptions o;
    o.points = 100;
    const double ra =
        suite_max(hermgeo::run_single_check("conformal-adjoint-shift", pairs, o));
    const double rs =
        suite_max(hermgeo::run_single_check("conformal-second-order-shift", pairs, o));
    c.pass = ra <= 1e-5 && rs <= 1e-4;
    c.detail = "adjoint shift " + fmt(ra) + " <= 1e-05, second-order shift " +
               fmt(rs) + " <= 1e-04";
}

void c6(Criterion& c) {
    const std::vector<MetricPtr> ms = {hermgeo::make_flat(2),
                                       hermgeo::make_fubini_study(2)};
    CheckOptions o;
    o.points = 100;
    const double rg =
        suite_max(hermgeo::run_single_check("kahler-mixed-connection", ms, o));
    const double rr =
        suite_max(hermgeo::run_single_check("kahler-ricci-degeneracy", ms, o));
    c.pass = rg <= 1e-8 && rr <= 1e-6;
    c.detail = "mixed connection " + fmt(rg) + " <= 1e-08, ricci degeneracy " +
               fmt(rr) + " <= 1e-06";
}

void c7(Criterion& c) {
    CheckOptions o;
    o.points = 100;
    const double r =
        suite_max(hermgeo::run_single_check("chern-ricci-routes", full_sweep(), o));
    c.pass = r <= 1e-6;
    c.detail = "10 metrics, 100 pts; max " + fmt(r) + " <= 1e-06";
}

void c8(Criterion& c) {
    const std::vector<MetricPtr> hopfs = {hermgeo::make_hopf_standard(2),
                                          hermgeo::make_hopf_perturbed(2)};
    const std::vector<MetricPtr> flattened = {hermgeo::make_hopf_perturbed(2)};
    CheckOptions o;
    o.grid_resolution = 8;

    // structure gate first: the norm identity below is only claimed for a
    // metric whose (n-1)-power is already pluriclosed at every grid node
    const SuiteReport gate =
        hermgeo::run_single_check("integral-gauduchon-precondition", hopfs, o);
    const double rgate = suite_max(gate);

    const double rtotal =
        suite_max(hermgeo::run_single_check("integral-total-scalar", hopfs, o));
    const SuiteReport refine =
        hermgeo::run_single_check("integral-refinement", hopfs, o);

    double rnorm = -1.0;
    if (suite_pass(gate))
        rnorm = suite_max(
            hermgeo::run_single_check("integral-adjoint-norm", flattened, o));

    c.pass = suite_pass(gate) && rtotal <= 1e-3 && rnorm >= 0.0 && rnorm <= 1e-3 &&
             suite_pass(refine);
    c.detail = "total-scalar " + fmt(rtotal) + " <= 1e-03, adjoint-norm " +
               (rnorm < 0.0 ? std::string("skipped (gate failed)") : fmt(rnorm)) +
               " <= 1e-03, gate " + fmt(rgate) + " <= 1e-06, refinement " +
               (suite_pass(refine) ? "converged" : "NOT converged");
}

void c9(Criterion& c) {
    CheckOptions o;
    const double r = suite_max(hermgeo::run_single_check(
        "inoue-weight-profile", {hermgeo::make_inoue_model()}, o));
    c.pass = r <= 1e-8;
    c.detail = "strip-weight curvature profile " + fmt(r) + " <= 1e-08";
}

void c10(Criterion& c) {
    CheckOptions o;
    o.points = 25;
    o.grid_resolution = 4;
    int mismatched = 0;
    for (const std::string& s : hermgeo::suite_names()) {
        const std::string a = hermgeo::to_json(hermgeo::run_suite(s, o)).dump(2);
        const std::string b = hermgeo::to_json(hermgeo::run_suite(s, o)).dump(2);
        if (a != b) ++mismatched;
    }
    c.pass = mismatched == 0;
    c.detail = std::to_string(hermgeo::suite_names().size()) +
               " suites re-run byte-identical" +
               (mismatched ? " (" + std::to_string(mismatched) + " mismatched)" : "");
}

}  // namespace

int main() {
    std::vector<Criterion> cs = {
        {"C1: flattened family is symmetrized-connection Ricci-flat", 10.0},
        {"C2: Ricci relation, direct vs second-order route", 60.0},
        {"C3: scalar relation and inner-product equality", 0.0},
        {"C4: adjoint-form routes and flattened-family closed form", 0.0},
        {"C5: conformal shift formulas for adjoint and second-order forms", 0.0},
        {"C6: Kahler degeneracy of the mixed connection and Ricci forms", 0.0},
        {"C7: Chern-Ricci curvature-trace vs log-determinant route", 0.0},
        {"C8: integral identities on the quotient fundamental domain", 120.0},
        {"C9: strip-model canonical-weight curvature", 0.0},
        {"C10: byte-identical suite reports on re-run", 0.0},
    };
    void (*runners[])(Criterion&) = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};

    bool all = true;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            runners[i](cs[i]);
        } catch (const std::exception& e) {
            cs[i].pass = false;
            cs[i].detail = std::string("error: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        bool within_budget = true;
        if (cs[i].budget_seconds > 0.0 && secs > cs[i].budget_seconds) {
            within_budget = false;
            cs[i].pass = false;
        }
        all = all && cs[i].pass;
        std::printf("[%s] %s (%s)%s [%.1fs]\n", cs[i].pass ? "PASS" : "FAIL",
                    cs[i].label.c_str(), cs[i].detail.c_str(),
                    within_budget ? "" : " [OVER BUDGET]", secs);
        std::fflush(stdout);
    }
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
