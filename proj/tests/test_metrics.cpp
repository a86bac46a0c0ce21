#include <gtest/gtest.h>

#include <cmath>

#include "hermgeo/metric.hpp"
#include "hermgeo/sampling.hpp"

using namespace hermgeo;

namespace {

ChartPoint pt(std::initializer_list<cxd> zs) { return ChartPoint(std::vector<cxd>(zs)); }

double jet_diff(const DerivativeJet& a, const DerivativeJet& b) {
    double worst = max_abs_diff(a.value, b.value);
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
        worst = std::max(worst, max_abs_diff(a.d_hol[i], b.d_hol[i]));
        worst = std::max(worst, max_abs_diff(a.d_antihol[i], b.d_antihol[i]));
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, max_abs_diff(a.d_mixed[i][j], b.d_mixed[i][j]));
    }
    if (a.has_holhol && b.has_holhol)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                worst = std::max(worst, max_abs_diff(a.d_holhol[i][j], b.d_holhol[i][j]));
    return worst;
}

std::vector<MetricPtr> jet_zoo() {
    return {
        make_hopf_standard(2),  make_hopf_standard(3), make_hopf_perturbed(2),
        make_hopf_perturbed(3), make_fubini_study(2),  make_inoue_model(),
        parse_metric_spec("conformal(hopf0:n=2; f=0.2*sin(x1)-0.1*y2)"),
    };
}

}  // namespace

TEST(Flat, value_and_jet) {
    auto m = make_flat(2);
    const ChartPoint p = pt({cxd(0.3, 1.0), cxd(-2, 0.5)});
    EXPECT_NEAR(max_abs_diff(m->value(p), CMat::identity(2)), 0.0, 0.0);
    DerivativeJet j = jet_at(m, p, DerivSource::Analytic);
    EXPECT_NEAR(j.d_hol[0].max_abs() + j.d_hol[1].max_abs(), 0.0, 0.0);
    EXPECT_NEAR(j.d_mixed[1][1].max_abs(), 0.0, 0.0);
}

TEST(Wirtinger, coordinate_and_absq_fields) {
    const ChartPoint p = pt({cxd(1, 0), cxd(0.2, -0.4)});
    auto f_z1 = [](const ChartPoint& q) { return q.z[0]; };
    EXPECT_NEAR(std::abs(wirtinger_derivative(f_z1, p, 0, WirtingerKind::Holomorphic, 1e-4) -
                         cxd(1.0)),
                0.0, 1e-10);
    EXPECT_NEAR(std::abs(wirtinger_derivative(f_z1, p, 0, WirtingerKind::Antiholomorphic, 1e-4)),
                0.0, 1e-10);
    auto f_absq = [](const ChartPoint& q) { return cxd(q.abs_sq(), 0.0); };
    EXPECT_NEAR(std::abs(wirtinger_derivative(f_absq, p, 0, WirtingerKind::Holomorphic, 1e-4) -
                         std::conj(p.z[0])),
                0.0, 1e-9);
}

TEST(Wirtinger, half_plane_log_weight_mixed_derivative) {
    // f(w) = log((Im w)^2): d^2 f / dw dwbar at w = i equals -1/2
    const ChartPoint p = pt({cxd(0, 1)});
    auto f = [](const ChartPoint& q) {
        const double y = q.y(0);
        return cxd(std::log(y * y), 0.0);
    };
    const cxd d = wirtinger_mixed(f, p, 0, 0, 1e-4);
    EXPECT_NEAR(std::abs(d - cxd(-0.5)), 0.0, 1e-7);
}

TEST(ConformalFlat, jet_examples) {
    auto m = conformal_flat(2, "x1");
    const ChartPoint p = pt({cxd(1, 0), cxd(0, 0)});
    CMat g = m->value(p);
    EXPECT_NEAR(std::abs(g(0, 0) - cxd(std::exp(1.0))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g(1, 1) - cxd(std::exp(1.0))), 0.0, 1e-12);

    DerivativeJet j = jet_at(m, p, DerivSource::Analytic);
    // d/dz1 e^{x1} delta = (1/2) e^{x1} delta; d/dz2 vanishes
    const double ef = std::exp(1.0);
    EXPECT_NEAR(std::abs(j.d_hol[0](0, 0) - cxd(0.5 * ef)), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(j.d_hol[0](1, 1) - cxd(0.5 * ef)), 0.0, 1e-8);
    EXPECT_NEAR(j.d_hol[1].max_abs(), 0.0, 1e-8);
    // mixed: d^2 e^{x1} / dz1 dzbar1 = (1/4) e^{x1}
    EXPECT_NEAR(std::abs(j.d_mixed[0][0](1, 1) - cxd(0.25 * ef)), 0.0, 1e-7);

    // conformal(flat, "0") is flat
    auto m0 = conformal_flat(2, "0");
    EXPECT_NEAR(max_abs_diff(m0->value(p), CMat::identity(2)), 0.0, 1e-15);
}

TEST(HopfStandard, value_and_jet_at_unit_point) {
    auto m = make_hopf_standard(2);
    const ChartPoint p = pt({cxd(1, 0), cxd(0, 0)});
    EXPECT_NEAR(max_abs_diff(m->value(p), CMat::identity(2)), 0.0, 1e-15);
    DerivativeJet j = jet_at(m, p, DerivSource::Analytic);
    // d_hol[1] of delta/|z|^2 at (1,0) = -delta
    CMat expect = CMat::identity(2) * cxd(-1.0);
    EXPECT_NEAR(max_abs_diff(j.d_hol[0], expect), 0.0, 1e-14);
    EXPECT_NEAR(j.d_hol[1].max_abs(), 0.0, 1e-14);
}

TEST(HopfPerturbed, closed_form_point_values) {
    auto m = make_hopf_perturbed(2);
    const ChartPoint p = pt({cxd(1, 0), cxd(0, 0)});
    MetricValue mv = evaluate_metric(m, p);
    EXPECT_NEAR(std::abs(mv.g(0, 0) - cxd(1.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(mv.g(1, 1) - cxd(0.5)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(mv.g(0, 1)) + std::abs(mv.g(1, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(mv.g_inv(0, 0) - cxd(1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(mv.g_inv(1, 1) - cxd(2.0)), 0.0, 1e-12);
}

TEST(HopfPerturbed, lu_inverse_matches_published_closed_form) {
    for (int n : {2, 3}) {
        auto m = std::make_shared<HopfPerturbedMetric>(n);
        auto pts = sample_points(401 + n, m->sampling_region(), n, 100);
        for (const auto& p : pts) {
            MetricValue mv = evaluate_metric(std::static_pointer_cast<const Metric>(m), p);
            EXPECT_LT(max_abs_diff(mv.g_inv, m->closed_form_inverse(p)), 1e-11);
        }
    }
}

TEST(HopfPerturbed, proof_contraction_identities) {
    for (int n : {2, 3}) {
        MetricPtr m = make_hopf_perturbed(n);
        auto pts = sample_points(77 + n, m->sampling_region(), n, 100);
        for (const auto& p : pts) {
            MetricValue mv = evaluate_metric(m, p);
            const double r2 = p.abs_sq();
            // sum_k g^{k ibar} zbar^k = |z|^2 zbar^i
            for (int i = 0; i < n; ++i) {
                cxd acc;
                for (int k = 0; k < n; ++k) acc += mv.g_inv(k, i) * std::conj(p.z[k]);
                EXPECT_LT(std::abs(acc - r2 * std::conj(p.z[i])), 1e-10 * r2);
            }
            // sum_q g^{q qbar} = (n+1) |z|^2
            cxd tr;
            for (int q = 0; q < n; ++q) tr += mv.g_inv(q, q);
            EXPECT_LT(std::abs(tr - cxd((n + 1) * r2)), 1e-10 * r2);
        }
    }
}

TEST(HopfPerturbed, determinant_profile_is_constant) {
    for (int n : {2, 3}) {
        MetricPtr m = make_hopf_perturbed(n);
        const double expected = std::pow((n - 1.0) / n, n - 1.0);
        auto pts = sample_points(500 + n, m->sampling_region(), n, 200);
        for (const auto& p : pts) {
            MetricValue mv = evaluate_metric(m, p);
            const double profile = mv.det * std::pow(p.abs_sq(), n);
            EXPECT_LT(std::abs(profile - expected), 1e-10 * expected);
        }
    }
}

TEST(Zoo, hermitian_positive_definite_everywhere) {
    for (const auto& m : jet_zoo()) {
        auto pts = sample_points(31337, m->sampling_region(), m->dim(), 1000);
        for (const auto& p : pts) {
            CMat g = m->value(p);
            EXPECT_TRUE(g.is_hermitian(1e-12)) << m->spec_string() << " at " << p.describe();
            EXPECT_TRUE(cholesky_positive_definite(g))
                << m->spec_string() << " at " << p.describe();
        }
    }
}

TEST(Zoo, deck_transformation_covariance) {
    for (const char* spec : {"hopf0:n=2", "hopfp:n=2", "hopfp:n=3"}) {
        MetricPtr m = parse_metric_spec(spec);
        auto pts = sample_points(202, m->sampling_region(), m->dim(), 50);
        for (const auto& p : pts) {
            ChartPoint half = p;
            for (auto& c : half.z) c *= 0.5;
            CMat lhs = m->value(half);
            CMat rhs = m->value(p) * cxd(4.0);
            EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12) << spec;
        }
    }
}

TEST(Jets, symmetry_invariant_analytic_and_fd) {
    for (const auto& m : jet_zoo()) {
        auto pts = sample_points(606, m->sampling_region(), m->dim(), 20);
        for (const auto& p : pts) {
            for (auto mode : {DerivSource::Analytic, DerivSource::FiniteDifference}) {
                DerivativeJet j = jet_at(m, p, mode);
                const double tol = (mode == DerivSource::Analytic) ? 1e-8 : 1e-8;
                const int n = j.dim();
                for (int d = 0; d < n; ++d)
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            EXPECT_LT(std::abs(j.d_antihol[d](a, b) -
                                               std::conj(j.d_hol[d](b, a))),
                                      tol)
                                << m->spec_string();
            }
        }
    }
}

TEST(Jets, fd_matches_analytic_with_quadratic_step_law) {
    for (const auto& m : jet_zoo()) {
        auto pts = sample_points(808, m->sampling_region(), m->dim(), 100);
        double err_h = 0.0, err_h2 = 0.0;
        for (const auto& p : pts) {
            DerivativeJet exact = jet_at(m, p, DerivSource::Analytic, 1e-3, true);
            DerivativeJet fd1 = jet_at(m, p, DerivSource::FiniteDifference, 2e-3, true);
            DerivativeJet fd2 = jet_at(m, p, DerivSource::FiniteDifference, 1e-3, true);
            err_h = std::max(err_h, jet_diff(exact, fd1));
            err_h2 = std::max(err_h2, jet_diff(exact, fd2));
        }
        EXPECT_LT(err_h, 1e-2) << m->spec_string();
        if (err_h > 1e-11) {  // flat-like cases have nothing to halve
            const double ratio = err_h / err_h2;
            EXPECT_GT(ratio, 3.5) << m->spec_string();
            EXPECT_LT(ratio, 4.5) << m->spec_string();
        }
    }
}

TEST(Inoue, weight_metric_jets) {
    MetricPtr m = make_inoue_model();
    const ChartPoint p = pt({cxd(0.3, 1.0), cxd(0.2, -0.7)});
    DerivativeJet j = jet_at(m, p, DerivSource::Analytic, 0.0, true);
    EXPECT_NEAR(std::abs(j.value(0, 0) - cxd(0.5)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(j.value(1, 1) - cxd(1.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(j.d_hol[0](0, 0) - cxd(0, 0.5)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(j.d_mixed[0][0](0, 0) - cxd(0.75)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(j.d_holhol[0][0](0, 0) - cxd(-0.75)), 0.0, 1e-14);
    // at w = 2i the varying entry scales by 1/y^2 = 1/4
    const ChartPoint p2 = pt({cxd(0, 2.0), cxd(0, 0)});
    EXPECT_NEAR(std::abs(m->value(p2)(0, 0) - cxd(0.125)), 0.0, 1e-14);
}

TEST(FubiniStudy, affine_chart_curvature_seed) {
    // mixed second derivative of g at the origin: d2 g_{11}/dz1 dzbar1 = -2
    MetricPtr m = make_fubini_study(1);
    const ChartPoint origin = pt({cxd(0, 0)});
    DerivativeJet j = jet_at(m, origin, DerivSource::Analytic);
    EXPECT_NEAR(std::abs(j.d_mixed[0][0](0, 0) - cxd(-2.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(j.value(0, 0) - cxd(1.0)), 0.0, 1e-14);
}

TEST(Domains, violations_are_reported) {
    EXPECT_THROW(make_hopf_standard(2)->value(pt({cxd(0, 0), cxd(0, 0)})), DomainError);
    EXPECT_THROW(make_inoue_model()->value(pt({cxd(0, -1), cxd(0, 0)})), DomainError);
    // stencil margin: a point extremely close to the puncture fails jet_at
    EXPECT_THROW(jet_at(make_hopf_standard(2), pt({cxd(1e-5, 0), cxd(0, 0)}),
                        DerivSource::FiniteDifference),
                 DomainError);
    EXPECT_THROW(make_flat(2)->value(pt({cxd(1, 0)})), DomainError);  // wrong dimension
}

TEST(CustomMetric, conjugate_completion_and_degeneracy) {
    using E = CustomMetric::Entry;
    std::vector<std::vector<E>> upper(2);
    upper[0] = {E{FieldExpr::parse("1+absq"), FieldExpr::parse("0")},
                E{FieldExpr::parse("x1*y2"), FieldExpr::parse("0.5")}};
    upper[1] = {E{FieldExpr::parse("2"), FieldExpr::parse("0")}};
    auto m = std::make_shared<CustomMetric>(2, upper);
    const ChartPoint p = pt({cxd(0.5, 0), cxd(0, 0.5)});
    CMat g = m->value(p);
    EXPECT_TRUE(g.is_hermitian(1e-15));
    EXPECT_NEAR(std::abs(g(1, 0) - std::conj(g(0, 1))), 0.0, 0.0);
    EXPECT_NEAR(std::abs(g(0, 1) - cxd(0.25, 0.5)), 0.0, 1e-15);

    std::vector<std::vector<E>> bad(1);
    bad[0] = {E{FieldExpr::parse("0-1"), FieldExpr::parse("0")}};
    auto neg = std::make_shared<CustomMetric>(1, bad);
    EXPECT_THROW(
        evaluate_metric(std::static_pointer_cast<const Metric>(neg), pt({cxd(0.1, 0)}),
                        DerivSource::FiniteDifference),
        DegenerateMetricError);
}

TEST(SpecStrings, parse_and_canonical_print) {
    for (const char* s : {"flat:n=2", "hopf0:n=3", "hopfp:n=2", "fs:n=2", "inoue-k"})
        EXPECT_EQ(parse_metric_spec(s)->spec_string(), s);
    auto c = parse_metric_spec("conformal(hopfp:n=2; f=sin(x1))");
    EXPECT_EQ(c->spec_string(), "conformal(hopfp:n=2; f=sin(x1))");
    EXPECT_EQ(c->dim(), 2);
    EXPECT_EQ(c->domain(), ChartDomain::PuncturedSpace);
    auto nested = parse_metric_spec("conformal(conformal(flat:n=2; f=x1); f=y2)");
    EXPECT_EQ(nested->spec_string(), "conformal(conformal(flat:n=2; f=x1); f=y2)");

    EXPECT_THROW(parse_metric_spec("hyperbolic:n=2"), ParseError);
    EXPECT_THROW(parse_metric_spec("hopfp:n=1"), Error);  // requires n >= 2
    EXPECT_THROW(parse_metric_spec("flat"), ParseError);
    EXPECT_THROW(parse_metric_spec("conformal(flat:n=2)"), ParseError);
}

TEST(SpecStrings, conformal_factor_bounds_hold_for_seeded_factors) {
    auto fs = seeded_conformal_factors(2024, 2, 5);
    MetricPtr base = make_hopf_standard(2);
    auto pts = sample_points(11, base->sampling_region(), 2, 200);
    for (const auto& f : fs)
        for (const auto& p : pts) {
            const double v = f.evaluate(p);
            EXPECT_LT(std::abs(v), 1.0) << f.print();
        }
}
