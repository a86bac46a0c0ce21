#pragma once

#include <algorithm>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "hermgeo/connection.hpp"
#include "hermgeo/curvature.hpp"
#include "hermgeo/hodge.hpp"
#include "hermgeo/metric.hpp"
#include "hermgeo/quadrature.hpp"
#include "hermgeo/sampling.hpp"
#include "hermgeo/version.hpp"

namespace hermgeo {

// ----------------------------------------------------------- run options ----
struct CheckOptions {
    int points = 100;                          // sample count per (check, metric)
    std::uint64_t seed = 2024;                 // sampling + seeded-factor seed
    DerivSource mode = DerivSource::Analytic;  // jet source for the sweeps
    double step = 0.0;                         // 0 keeps per-operator defaults
    double tol_override = 0.0;                 // 0 keeps the pinned tolerances
    int grid_resolution = 8;                   // base resolution for integrals
    bool augment = true;                       // add seeded partners / model metrics
};

// --------------------------------------------------------------- records ----
struct CheckRecord {
    std::string check;
    std::string identity;
    std::string metric;
    std::string status = "ran";  // "ran" | "not-applicable"
    int points = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::string version;
    std::string mode;
    double step = 0.0;
    std::uint64_t seed = 0;
    int points = 0;
    std::vector<std::string> conventions;
    std::vector<CheckRecord> records;
    bool overall_pass = true;
};

inline std::vector<std::string> convention_strings() {
    return {
        "metric inverse: sum_q g_inv(i,q) * g(k,q) = delta_{ik}",
        "(1,1)-forms carry an implicit sqrt(-1) on every coefficient",
        "curvature trace: the upper leg is contracted against the last lower slot",
        kOmegaConventionString,
        kNormConventionString,
        kSummationConventionString,
    };
}

// ------------------------------------------------------------- internals ----
namespace verify_detail {

struct Stats {
    int points = 0;
    double max_r = 0.0, sum_r = 0.0;
    void add(double r) {
        ++points;
        max_r = std::max(max_r, r);
        sum_r += r;
    }
    double mean() const { return points ? sum_r / points : 0.0; }
};

inline void fill(CheckRecord& rec, const Stats& st) {
    rec.points = st.points;
    rec.max_residual = st.max_r;
    rec.mean_residual = st.mean();
    rec.pass = st.max_r <= rec.tolerance;
}

inline bool family_is(const MetricPtr& m, const char* f) { return m->family() == f; }
inline bool is_hopf(const MetricPtr& m) {
    return family_is(m, "hopf-standard") || family_is(m, "hopf-perturbed");
}
inline bool is_kahler_family(const MetricPtr& m) {
    return family_is(m, "flat") || family_is(m, "fubini-study");
}
inline const ConformalMetric* as_conformal(const MetricPtr& m) {
    return dynamic_cast<const ConformalMetric*>(m.get());
}
// families whose (n-1)-power structure equation is a claim worth gating on
inline bool has_structure_claim(const MetricPtr& m) {
    return m->dim() >= 2 && (is_hopf(m) || is_kahler_family(m));
}

inline std::vector<ChartPoint> sweep_points(const MetricPtr& m, const CheckOptions& o) {
    return sample_points(o.seed, m->sampling_region(), m->dim(), o.points);
}

// family constant c in the closed forms a = -c sqrt(-1) dbar-conj(z)/r^2 and
// S = c Hess(log r^2): the perturbed metric carries c = n, the standard c = n-1
inline double hopf_family_constant(const MetricPtr& m) {
    return family_is(m, "hopf-perturbed") ? m->dim() : m->dim() - 1;
}

inline Form11 hopf_log_hessian(const ChartPoint& p) {
    const int n = p.n();
    const double r2 = p.abs_sq();
    Form11 h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            h.coeff(i, j) = std::conj(p.z[i]) * p.z[j] * (-1.0 / (r2 * r2));
            if (i == j) h.coeff(i, j) += 1.0 / r2;
        }
    return h;
}

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

}  // namespace verify_detail

// --------------------------------------------------------- check registry ----
struct CheckDef {
    std::string id;
    std::string identity;
    std::vector<std::string> suites;  // suites the check belongs to ("all" implied)
    double tol_analytic = 0.0, tol_fd = 0.0;
    std::function<bool(const MetricPtr&)> applies;
    std::function<void(const MetricPtr&, const CheckOptions&, CheckRecord&)> run;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "key-identity",     "scalar-identity", "adjoint-agreement",
        "conformal-lemma",  "kahler-degeneracy", "hopf-closed-forms",
        "gauduchon-balanced", "integral-identities", "inoue-curvature",
        "all",
    };
    return names;
}

inline const std::vector<CheckDef>& check_registry() {
    using namespace verify_detail;
    static const std::vector<CheckDef> defs = [] {
        std::vector<CheckDef> v;
        auto any_metric = [](const MetricPtr&) { return true; };

        v.push_back({"ricci-identity",
                     "ricci_sym = ricci_chern - (1/2)(d d* + dbar dbar*) omega",
                     {"key-identity"}, 1e-5, 1e-3, any_metric,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const Form11 direct = lc_curvature(m, p, o.mode, o.step).ricci;
                             const Form11 via = lc_ricci_via_identity(m, p, o.mode, o.step);
                             st.add(max_abs_diff(direct.coeff, via.coeff));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"chern-ricci-routes",
                     "trace of curvature = - d dbar log det g",
                     {"key-identity"}, 1e-6, 1e-6, any_metric,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const MetricValue mv = evaluate_metric(m, p, o.mode, o.step);
                             const Form11 tr = chern_ricci(mv);
                             const Form11 ld = chern_ricci_logdet(m, p, o.step);
                             st.add(max_abs_diff(tr.coeff, ld.coeff));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"scalar-identity",
                     "s_sym = s_chern - <(1/2)(d d* + dbar dbar*) omega, omega>",
                     {"scalar-identity"}, 1e-5, 1e-3, any_metric,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const LCCurvature lc = lc_curvature(m, p, o.mode, o.step);
                             const MetricValue mv = evaluate_metric(m, p, o.mode, o.step);
                             const cxd sc = chern_scalar_full(mv, chern_ricci(mv));
                             const cxd inner =
                                 inner_with_omega(second_order_form(m, p, o.mode, o.step), mv);
                             st.add(std::abs(lc.scalar_full - sc + inner));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"inner-product-routes",
                     "<a,omega> trace route = full two-index contraction; <omega,omega> = n",
                     {"scalar-identity"}, 1e-10, 1e-10, any_metric,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const MetricValue mv = evaluate_metric(m, p, o.mode, o.step);
                             const Form11 s = second_order_form(m, p, o.mode, o.step);
                             const Form11 omega{mv.g};
                             const cxd t = inner_with_omega(s, mv);
                             const cxd full = pointwise_inner_11(s, omega, mv);
                             const cxd nn = inner_with_omega(omega, mv);
                             st.add(std::max(std::abs(t - full),
                                             std::abs(nn - cxd(m->dim(), 0.0))));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"scalar-reality",
                     "Im s_sym = 0 and Im s_chern = 0",
                     {"scalar-identity"}, 1e-8, 1e-7, any_metric,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const LCCurvature lc = lc_curvature(m, p, o.mode, o.step);
                             const MetricValue mv = evaluate_metric(m, p, o.mode, o.step);
                             const cxd sc = chern_scalar_full(mv, chern_ricci(mv));
                             st.add(std::max(std::abs(lc.scalar_full.imag()),
                                             std::abs(sc.imag())));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"adjoint-routes",
                     "dbar* omega by torsion contraction = dbar* omega by mixed trace",
                     {"adjoint-agreement"}, 1e-6, 1e-6, any_metric,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const MetricValue mv = evaluate_metric(m, p, o.mode, o.step);
                             const Form10 a1 = dbar_star_omega_lambda(mv);
                             const Form10 a2 = dbar_star_omega_gamma(mv);
                             double r = 0.0;
                             for (int i = 0; i < m->dim(); ++i)
                                 r = std::max(r, std::abs(a1.a[i] - a2.a[i]));
                             st.add(r);
                         }
                         fill(rec, st);
                     }});

        v.push_back({"adjoint-conjugate",
                     "d* omega = conjugate of dbar* omega",
                     {"adjoint-agreement"}, 1e-12, 1e-12, any_metric,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const MetricValue mv = evaluate_metric(m, p, o.mode, o.step);
                             const Form10 a = dbar_star_omega_gamma(mv);
                             const Form01 b = par_star_omega_gamma(mv);
                             double r = 0.0;
                             for (int i = 0; i < m->dim(); ++i)
                                 r = std::max(r, std::abs(b.b[i] - std::conj(a.a[i])));
                             st.add(r);
                         }
                         fill(rec, st);
                     }});

        v.push_back({"conformal-adjoint-shift",
                     "dbar*_f omega_f = dbar* omega + sqrt(-1)(n-1) d f",
                     {"conformal-lemma"}, 1e-5, 1e-4,
                     [](const MetricPtr& m) { return as_conformal(m) != nullptr; },
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const ConformalMetric* cm = as_conformal(m);
                         const int n = m->dim();
                         auto fval = [&](const ChartPoint& q) {
                             return cxd(cm->factor().evaluate(q), 0.0);
                         };
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const Form10 af =
                                 dbar_star_omega_gamma(evaluate_metric(m, p, o.mode, o.step));
                             const Form10 ab = dbar_star_omega_gamma(
                                 evaluate_metric(cm->base(), p, o.mode, o.step));
                             double r = 0.0;
                             for (int i = 0; i < n; ++i) {
                                 const cxd df = wirtinger_derivative(
                                     fval, p, i, WirtingerKind::Holomorphic, default_step(p));
                                 r = std::max(r,
                                              std::abs(af.a[i] - ab.a[i] - kI * double(n - 1) * df));
                             }
                             st.add(r);
                         }
                         fill(rec, st);
                     }});

        v.push_back({"conformal-second-order-shift",
                     "dbar dbar*_f omega_f = dbar dbar* omega - sqrt(-1)(n-1) d dbar f (symmetrized)",
                     {"conformal-lemma"}, 1e-5, 1e-4,
                     [](const MetricPtr& m) { return as_conformal(m) != nullptr; },
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const ConformalMetric* cm = as_conformal(m);
                         const int n = m->dim();
                         auto fval = [&](const ChartPoint& q) {
                             return cxd(cm->factor().evaluate(q), 0.0);
                         };
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const Form11 sf = second_order_form(m, p, o.mode, o.step);
                             const Form11 sb = second_order_form(cm->base(), p, o.mode, o.step);
                             CMat hess(n);
                             for (int i = 0; i < n; ++i)
                                 for (int j = 0; j < n; ++j)
                                     hess(i, j) = wirtinger_mixed(fval, p, i, j, default_step(p));
                             const CMat hsym = (hess + hess.conj_transpose()) * cxd(0.5);
                             st.add(max_abs_diff(sf.coeff,
                                                 sb.coeff - hsym * cxd(double(n - 1))));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"kahler-mixed-connection",
                     "mixed-leg coefficients vanish when d omega = 0",
                     {"kahler-degeneracy"}, 1e-8, 1e-8, is_kahler_family,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const ConnectionCoeffs c = lc_coefficients(m, p, o.mode, o.step);
                             double r = 0.0;
                             for (const CMat& mm : c.mixed) r = std::max(r, mm.max_abs());
                             st.add(r);
                         }
                         fill(rec, st);
                     }});

        v.push_back({"kahler-ricci-degeneracy",
                     "ricci_sym = ricci_chern when d omega = 0",
                     {"kahler-degeneracy"}, 1e-6, 1e-4, is_kahler_family,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const Form11 lc = lc_curvature(m, p, o.mode, o.step).ricci;
                             const Form11 ch =
                                 chern_ricci(evaluate_metric(m, p, o.mode, o.step));
                             st.add(max_abs_diff(lc.coeff, ch.coeff));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"kahler-torsion",
                     "torsion vanishes when d omega = 0",
                     {"kahler-degeneracy"}, 1e-10, 1e-8, is_kahler_family,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o))
                             st.add(torsion_form(m, p, o.mode, o.step).max_abs());
                         fill(rec, st);
                     }});

        v.push_back({"hopf-lc-ricci-flat",
                     "symmetrized-connection Ricci form vanishes for the flattened family",
                     {"hopf-closed-forms"}, 1e-6, 1e-4,
                     [](const MetricPtr& m) { return family_is(m, "hopf-perturbed"); },
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o))
                             st.add(lc_curvature(m, p, o.mode, o.step).ricci.max_abs());
                         fill(rec, st);
                     }});

        v.push_back({"hopf-adjoint-closed-form",
                     "dbar* omega = -c sqrt(-1) d log r^2, c = n (flattened) or n-1 (standard)",
                     {"hopf-closed-forms"}, 1e-6, 1e-6, is_hopf,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const double c = hopf_family_constant(m);
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const Form10 a =
                                 dbar_star_omega_gamma(evaluate_metric(m, p, o.mode, o.step));
                             const double r2 = p.abs_sq();
                             double r = 0.0;
                             for (int i = 0; i < m->dim(); ++i)
                                 r = std::max(r, std::abs(a.a[i] +
                                                          c * kI * std::conj(p.z[i]) / r2));
                             st.add(r);
                         }
                         fill(rec, st);
                     }});

        v.push_back({"hopf-chern-ricci-closed-form",
                     "ricci_chern = n * Hess(log r^2) for both standard-family metrics",
                     {"hopf-closed-forms"}, 1e-6, 1e-4, is_hopf,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const double n = m->dim();
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const Form11 ric =
                                 chern_ricci(evaluate_metric(m, p, o.mode, o.step));
                             const Form11 h = hopf_log_hessian(p);
                             st.add(max_abs_diff(ric.coeff, h.coeff * cxd(n)));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"hopf-second-order-closed-form",
                     "(1/2)(d d* + dbar dbar*) omega = c * Hess(log r^2)",
                     {"hopf-closed-forms"}, 1e-6, 1e-4, is_hopf,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const double c = hopf_family_constant(m);
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const Form11 s = second_order_form(m, p, o.mode, o.step);
                             const Form11 h = hopf_log_hessian(p);
                             st.add(max_abs_diff(s.coeff, h.coeff * cxd(c)));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"hopf-det-profile",
                     "det g * r^{2n} is the family constant ((n-1)/n)^{n-1} or 1",
                     {"hopf-closed-forms"}, 1e-10, 1e-10, is_hopf,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const int n = m->dim();
                         const double target = family_is(m, "hopf-perturbed")
                                                   ? std::pow((n - 1.0) / n, n - 1)
                                                   : 1.0;
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             const MetricValue mv = evaluate_metric(m, p, o.mode, o.step);
                             const double got =
                                 mv.det * std::pow(p.abs_sq(), n);
                             st.add(std::abs(got - target) / target);
                         }
                         fill(rec, st);
                     }});

        v.push_back({"deck-invariance",
                     "both scalar curvatures agree at z and z/2",
                     {"hopf-closed-forms"}, 1e-8, 1e-6, is_hopf,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o)) {
                             ChartPoint q = p;
                             for (auto& z : q.z) z *= 0.5;
                             // scale the stencils with the points so truncation
                             // errors cancel instead of being compared raw
                             const double hp = (o.step > 0.0 ? o.step : 3e-5) * p.norm();
                             const LCCurvature l1 = lc_curvature(m, p, o.mode, hp);
                             const LCCurvature l2 = lc_curvature(m, q, o.mode, 0.5 * hp);
                             const MetricValue m1 = evaluate_metric(m, p, o.mode, hp);
                             const MetricValue m2 = evaluate_metric(m, q, o.mode, 0.5 * hp);
                             const double s1 = chern_scalar(m1), s2 = chern_scalar(m2);
                             st.add(std::max(std::abs(l1.scalar - l2.scalar),
                                             std::abs(s1 - s2)));
                         }
                         fill(rec, st);
                     }});

        v.push_back({"gauduchon-residual",
                     "d' dbar omega^{n-1} = 0",
                     {"gauduchon-balanced"}, 1e-6, 1e-6, has_structure_claim,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o))
                             st.add(max_abs(gauduchon_residual(m, p, o.step)));
                         fill(rec, st);
                     }});

        v.push_back({"balanced-defect",
                     "d omega^{n-1} = 0 (Kahler families) / defect witness > 0.05 (standard family)",
                     {"gauduchon-balanced"}, 1e-8, 1e-8, has_structure_claim,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         Stats st;
                         for (const ChartPoint& p : sweep_points(m, o))
                             st.add(max_abs(balanced_residual(m, p, o.step)));
                         if (is_kahler_family(m)) {
                             fill(rec, st);
                         } else {
                             rec.points = st.points;
                             rec.max_residual = st.max_r;
                             rec.mean_residual = st.mean();
                             rec.tolerance = 0.05;
                             rec.pass = st.max_r > 0.05;
                             rec.note =
                                 "non-balanced family: pass means the defect exceeds the witness threshold";
                         }
                     }});

        auto integral_applies = [](const MetricPtr& m) {
            return is_hopf(m) && m->dim() == 2;
        };

        v.push_back({"integral-total-scalar",
                     "integral of s_chern omega^n = n * integral of ricci_chern wedge omega^{n-1}",
                     {"integral-identities"}, 1e-3, 1e-3, integral_applies,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const IntegrationGrid g =
                             IntegrationGrid::make(m->dim(), o.grid_resolution);
                         const double vs =
                             integrate_top_form(m, Integrand::ScalarVolume, g, nullptr, o.mode);
                         const double vr =
                             integrate_top_form(m, Integrand::RicciWedge, g, nullptr, o.mode);
                         Stats st;
                         st.add(std::abs(vs - m->dim() * vr) / std::abs(vs));
                         fill(rec, st);
                         rec.note = "lhs " + verify_detail::format_value(vs) + ", rhs " +
                                    verify_detail::format_value(m->dim() * vr);
                     }});

        v.push_back({"integral-adjoint-norm",
                     "integral of s_chern omega^n = n * |dbar* omega|^2 for the flattened metric",
                     {"integral-identities"}, 1e-3, 1e-3,
                     [](const MetricPtr& m) {
                         return family_is(m, "hopf-perturbed") && m->dim() == 2;
                     },
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const IntegrationGrid g =
                             IntegrationGrid::make(m->dim(), o.grid_resolution);
                         const double vs =
                             integrate_top_form(m, Integrand::ScalarVolume, g, nullptr, o.mode);
                         const double nn =
                             integrate_top_form(m, Integrand::AdjointNormSq, g, nullptr, o.mode);
                         Stats st;
                         st.add(std::abs(vs - m->dim() * nn) / std::abs(vs));
                         fill(rec, st);
                         rec.note = "lhs " + verify_detail::format_value(vs) + ", rhs " +
                                    verify_detail::format_value(m->dim() * nn);
                     }});

        v.push_back({"integral-gauduchon-precondition",
                     "d' dbar omega^{n-1} = 0 at every quadrature node",
                     {"integral-identities"}, 1e-6, 1e-6, integral_applies,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const IntegrationGrid g =
                             IntegrationGrid::make(m->dim(), o.grid_resolution);
                         Stats st;
                         g.for_each_node([&](const ChartPoint& p, double) {
                             st.add(max_abs(gauduchon_residual(m, p, o.step)));
                         });
                         fill(rec, st);
                     }});

        v.push_back({"integral-refinement",
                     "total-scalar integral stable under grid refinement (R, 2R, 4R)",
                     {"integral-identities"}, 1e-2, 1e-2, integral_applies,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const RefinementStudy study = grid_refine_study(
                             m, Integrand::ScalarVolume, o.grid_resolution, 0.5, 1.0,
                             nullptr, o.mode);
                         Stats st;
                         st.add(study.last_rel_diff);
                         fill(rec, st);
                         rec.pass = study.converged;
                         std::string note = "values";
                         for (const RefinementRow& row : study.rows)
                             note += " R=" + std::to_string(row.resolution) + ": " +
                                     verify_detail::format_value(row.value);
                         rec.note = note;
                     }});

        v.push_back({"integral-deck-shift",
                     "total-scalar integral agrees on the next fundamental annulus down",
                     {"integral-identities"}, 1e-3, 1e-3, integral_applies,
                     [](const MetricPtr& m, const CheckOptions& o, CheckRecord& rec) {
                         const IntegrationGrid g0 =
                             IntegrationGrid::make(m->dim(), o.grid_resolution);
                         const IntegrationGrid g1 = IntegrationGrid::make(
                             m->dim(), o.grid_resolution, 0.25, 0.5);
                         const double v0 =
                             integrate_top_form(m, Integrand::ScalarVolume, g0, nullptr, o.mode);
                         const double v1 =
                             integrate_top_form(m, Integrand::ScalarVolume, g1, nullptr, o.mode);
                         Stats st;
                         st.add(std::abs(v1 - v0) / std::abs(v0));
                         fill(rec, st);
                     }});

        v.push_back({"inoue-weight-profile",
                     "curvature of the weight (Im w)^2 is -1/(2 y^2) on the strip",
                     {"inoue-curvature"}, 1e-8, 1e-8,
                     [](const MetricPtr& m) { return family_is(m, "inoue-model"); },
                     [](const MetricPtr&, const CheckOptions&, CheckRecord& rec) {
                         const FieldExpr weight = FieldExpr::parse("y1^2");
                         std::vector<double> ys = {1.0};  // the -1/2 anchor first
                         for (int k = 0; k <= 20; ++k) ys.push_back(0.5 + 1.5 * k / 20.0);
                         Stats st;
                         for (const double y : ys) {
                             const ChartPoint p{{cxd(0.3, y), cxd(0.4, 0.7)}};
                             const Form11 ric = line_bundle_ricci(weight, p);
                             double r = std::abs(ric.coeff(0, 0) + 1.0 / (2.0 * y * y));
                             r = std::max(r, std::abs(ric.coeff(0, 1)));
                             r = std::max(r, std::abs(ric.coeff(1, 0)));
                             r = std::max(r, std::abs(ric.coeff(1, 1)));
                             st.add(r);
                         }
                         fill(rec, st);
                     }});

        return v;
    }();
    return defs;
}

// ------------------------------------------------------- coverage listing ----
inline std::vector<std::pair<std::string, std::string>> coverage_table() {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const CheckDef& d : check_registry()) rows.push_back({d.id, d.identity});
    return rows;
}

// --------------------------------------------------------- working set ----
inline std::vector<MetricPtr> default_metric_set() {
    return {
        make_flat(2),
        conformal_flat(2, "x1"),
        make_hopf_standard(2),
        make_hopf_perturbed(2),
        make_hopf_perturbed(3),
        make_fubini_study(2),
    };
}

// seeded conformal partners (and the strip model for its suite) extend the
// working set so the sweep checks see perturbed metrics with no closed form
inline std::vector<MetricPtr> working_metric_set(const std::string& suite,
                                                 std::vector<MetricPtr> set,
                                                 const CheckOptions& opts) {
    if (opts.augment) {
        const bool sweep = suite == "key-identity" || suite == "scalar-identity" ||
                           suite == "adjoint-agreement" || suite == "all";
        if (sweep) {
            const std::vector<MetricPtr> bases = {make_flat(2), make_hopf_standard(2),
                                                  make_hopf_perturbed(2)};
            const std::vector<FieldExpr> fs = seeded_conformal_factors(opts.seed, 2, 5);
            for (std::size_t i = 0; i < fs.size(); ++i)
                set.push_back(conformal_rescale(bases[i % bases.size()], fs[i]));
        }
        if (suite == "conformal-lemma" || suite == "all") {
            const std::vector<MetricPtr> bases = {make_flat(2), make_hopf_standard(2)};
            const std::vector<FieldExpr> fs = seeded_conformal_factors(opts.seed, 2, 5);
            for (const MetricPtr& b : bases)
                for (const FieldExpr& f : fs) set.push_back(conformal_rescale(b, f));
        }
        if (suite == "inoue-curvature" || suite == "all") set.push_back(make_inoue_model());
    }
    return set;
}

// --------------------------------------------------------------- driver ----
namespace verify_detail {

inline CheckRecord execute(const CheckDef& def, const MetricPtr& m, const CheckOptions& opts) {
    CheckRecord rec;
    rec.check = def.id;
    rec.identity = def.identity;
    rec.metric = m->spec_string();
    rec.tolerance = (opts.tol_override > 0.0)
                        ? opts.tol_override
                        : (opts.mode == DerivSource::Analytic ? def.tol_analytic : def.tol_fd);
    if (!def.applies(m)) {
        rec.status = "not-applicable";
        rec.pass = true;
        rec.note = "check does not apply to this metric";
        return rec;
    }
    try {
        def.run(m, opts, rec);
    } catch (const std::exception& e) {
        rec.pass = false;
        rec.note = std::string("error: ") + e.what();
    }
    return rec;
}

inline SuiteReport report_shell(std::string title, const CheckOptions& opts) {
    SuiteReport report;
    report.suite = std::move(title);
    report.version = kVersion;
    report.mode = (opts.mode == DerivSource::Analytic) ? "analytic" : "fd";
    report.step = opts.step;
    report.seed = opts.seed;
    report.points = opts.points;
    report.conventions = convention_strings();
    return report;
}

}  // namespace verify_detail

inline SuiteReport run_suite(const std::string& suite, std::vector<MetricPtr> metrics,
                             const CheckOptions& opts = {}) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::string msg = "unknown suite '" + suite + "'; valid suites:";
        for (const auto& s : names) msg += " " + s;
        throw DomainError(msg);
    }

    SuiteReport report = verify_detail::report_shell(suite, opts);
    const std::vector<MetricPtr> working = working_metric_set(suite, std::move(metrics), opts);

    for (const CheckDef& def : check_registry()) {
        const bool in_suite =
            suite == "all" ||
            std::find(def.suites.begin(), def.suites.end(), suite) != def.suites.end();
        if (!in_suite) continue;
        for (const MetricPtr& m : working) {
            CheckRecord rec = verify_detail::execute(def, m, opts);
            if (!rec.pass) report.overall_pass = false;
            report.records.push_back(std::move(rec));
        }
    }
    return report;
}

inline SuiteReport run_suite(const std::string& suite, const CheckOptions& opts = {}) {
    return run_suite(suite, default_metric_set(), opts);
}

// one named check over a metric set (the CLI's `check` subcommand)
inline SuiteReport run_single_check(const std::string& id, std::vector<MetricPtr> metrics,
                                    const CheckOptions& opts = {}) {
    const CheckDef* def = nullptr;
    for (const CheckDef& d : check_registry())
        if (d.id == id) {
            def = &d;
            break;
        }
    if (!def) {
        std::string msg = "unknown check '" + id + "'; valid checks:";
        for (const CheckDef& d : check_registry()) msg += " " + d.id;
        throw DomainError(msg);
    }
    SuiteReport report = verify_detail::report_shell("check:" + id, opts);
    for (const MetricPtr& m : metrics) {
        CheckRecord rec = verify_detail::execute(*def, m, opts);
        if (!rec.pass) report.overall_pass = false;
        report.records.push_back(std::move(rec));
    }
    return report;
}

// ------------------------------------------------------------- rendering ----
inline nlohmann::json to_json(const SuiteReport& r) {
    nlohmann::json env;
    env["version"] = r.version;
    env["mode"] = r.mode;
    env["step"] = (r.step > 0.0) ? nlohmann::json(r.step) : nlohmann::json("default");
    env["seed"] = r.seed;
    env["points"] = r.points;
    env["conventions"] = r.conventions;

    nlohmann::json checks = nlohmann::json::array();
    for (const CheckRecord& c : r.records) {
        nlohmann::json j;
        j["check"] = c.check;
        j["identity"] = c.identity;
        j["metric"] = c.metric;
        j["status"] = c.status;
        j["points"] = c.points;
        j["max_residual"] = c.max_residual;
        j["mean_residual"] = c.mean_residual;
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        if (!c.note.empty()) j["note"] = c.note;
        checks.push_back(std::move(j));
    }

    nlohmann::json out;
    out["suite"] = r.suite;
    out["environment"] = std::move(env);
    out["checks"] = std::move(checks);
    out["overall_pass"] = r.overall_pass;
    return out;
}

inline std::string render_table(const SuiteReport& r) {
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    std::string out;
    out += "suite: " + r.suite + "   (library " + r.version + ", mode " + r.mode +
           ", seed " + std::to_string(r.seed) + ", " + std::to_string(r.points) +
           " points/check)\n";
    out += pad("result", 8) + pad("check", 34) + pad("metric", 30) + pad("points", 8) +
           pad("max residual", 16) + "tolerance\n";
    out += std::string(104, '-') + "\n";
    char buf[40];
    for (const CheckRecord& c : r.records) {
        std::string result = (c.status == "not-applicable") ? "  n/a" : (c.pass ? " pass" : " FAIL");
        out += pad(result, 8) + pad(c.check, 34) + pad(c.metric, 30);
        if (c.status == "not-applicable") {
            out += pad("-", 8) + pad("-", 16) + "-\n";
            continue;
        }
        out += pad(std::to_string(c.points), 8);
        std::snprintf(buf, sizeof(buf), "%.3e", c.max_residual);
        out += pad(buf, 16);
        std::snprintf(buf, sizeof(buf), "%.1e", c.tolerance);
        out += buf;
        out += "\n";
    }
    out += std::string(104, '-') + "\n";
    out += std::string("overall: ") + (r.overall_pass ? "PASS" : "FAIL") + "\n";
    return out;
}

}  // namespace hermgeo
