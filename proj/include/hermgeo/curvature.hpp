#pragma once

#include <cmath>
#include <vector>

#include "hermgeo/connection.hpp"
#include "hermgeo/field_expr.hpp"
#include "hermgeo/forms.hpp"
#include "hermgeo/metric.hpp"

namespace hermgeo {

// Rank-4 coefficient block, indexed (i, j, k, l) row-major.  The index roles
// depend on the tensor stored; each producer documents its slot meaning.
struct Tensor4 {
    int n;
    std::vector<cxd> v;
    explicit Tensor4(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_ * n_) {}
    cxd& operator()(int i, int j, int k, int l) {
        return v[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
    }
    const cxd& operator()(int i, int j, int k, int l) const {
        return v[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& x : v) m = std::max(m, std::abs(x));
        return m;
    }
};

// ---------------------------------------------------------------- Chern ----
// Curvature of the canonical compatible connection on T^{1,0}:
//   R(i,j,k,l) = - d2 g_{k lbar} / dz^i dzbar^j
//                + sum_{p,q} g^{p qbar} (d g_{k qbar}/dz^i)(d g_{p lbar}/dzbar^j)
inline Tensor4 chern_curvature(const MetricValue& mv) {
    const int n = mv.dim();
    Tensor4 R(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    cxd acc = -mv.jet.d_mixed[i][j](k, l);
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q)
                            acc += mv.g_inv(p, q) * mv.jet.d_hol[i](k, q) *
                                   mv.jet.d_antihol[j](p, l);
                    R(i, j, k, l) = acc;
                }
    return R;
}

// trace route: R_{i jbar} = sum_{k,l} g^{k lbar} R(i,j,k,l)
inline Form11 chern_ricci(const MetricValue& mv, const Tensor4& full) {
    const int n = mv.dim();
    Form11 r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cxd acc;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) acc += mv.g_inv(k, l) * full(i, j, k, l);
            r.coeff(i, j) = acc;
        }
    return r;
}
inline Form11 chern_ricci(const MetricValue& mv) { return chern_ricci(mv, chern_curvature(mv)); }

// independent route: R_{i jbar} = - d2 log det g / dz^i dzbar^j, differenced
// from plain metric values (no jets involved)
inline Form11 chern_ricci_logdet(const MetricPtr& metric, const ChartPoint& p,
                                 double step = 0.0) {
    const int n = metric->dim();
    const double h = (step > 0.0) ? step : default_step(p);
    require_in_domain(metric->domain(), p, 2.5 * h, "log-det stencil");
    auto logdet = [&](const ChartPoint& q) {
        const cxd det = determinant(metric->value(q));
        if (!(det.real() > 0.0))
            throw DegenerateMetricError("metric determinant not positive at " + q.describe());
        return cxd(std::log(det.real()), 0.0);
    };
    Form11 r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.coeff(i, j) = -wirtinger_mixed(logdet, p, i, j, h);
    return r;
}

inline cxd chern_scalar_full(const MetricValue& mv, const Form11& ricci) {
    cxd s;
    for (int i = 0; i < mv.dim(); ++i)
        for (int j = 0; j < mv.dim(); ++j) s += mv.g_inv(i, j) * ricci.coeff(i, j);
    return s;
}
inline double chern_scalar(const MetricValue& mv, const Form11& ricci) {
    return chern_scalar_full(mv, ricci).real();
}
inline double chern_scalar(const MetricValue& mv) { return chern_scalar(mv, chern_ricci(mv)); }

// ----------------------------------------------------------- Levi-Civita ----
// (1,1)-part of the Levi-Civita curvature on T^{1,0} and its traces.
struct LCCurvature {
    Tensor4 upper;    // upper(i,j,k,l): lower legs (i, jbar, k), upper leg l
    Tensor4 lowered;  // lowered(i,j,k,l) = sum_s upper(i,j,k,s) g_{s lbar}
    Form11 ricci;     // ricci(i,j) = sum_k upper(i,j,k,k)
    double scalar;    // sum g^{i jbar} g^{k lbar} lowered(i,j,k,l)
    cxd scalar_full;  // the same trace before taking the real part

    explicit LCCurvature(int n) : upper(n), lowered(n), ricci(n), scalar(0.0) {}
};

// Connection coefficients of every flavor at the four real-coordinate stencil
// legs of direction d, combined into d/dz^d and d/dzbar^d of both families.
inline LCCurvature lc_curvature(const MetricPtr& metric, const ChartPoint& p,
                                DerivSource mode = DerivSource::Analytic,
                                double step = 0.0) {
    const int n = metric->dim();
    // The coefficient fields only involve first derivatives of g, so their own
    // differencing can run at a smaller step than the jet engine default: the
    // truncation term shrinks quadratically while the roundoff amplification
    // stays far below it, and the scalar's imaginary residue lands well under
    // the 1e-8 reality budget.
    const double h = (step > 0.0) ? step : default_step(p, 3e-5);
    require_in_domain(metric->domain(), p, 4.0 * h, "connection-derivative stencil");

    MetricValue mv = evaluate_metric(metric, p, mode, step);
    ConnectionCoeffs c0 = lc_coefficients(mv);

    auto conn = [&](const ChartPoint& q) {
        return lc_coefficients(evaluate_metric(metric, q, mode, step));
    };

    // dbar_hol[d][l](i,k) = d Gamma(hol)^l_{ik} / dzbar^d
    // dz_mixed[d][l](j,k) = d Gamma(mixed)^l_{jbar k} / dz^d
    std::vector<std::vector<CMat>> dbar_hol(n), dz_mixed(n);
    for (int d = 0; d < n; ++d) {
        const ConnectionCoeffs cxp = conn(p.displaced(2 * d, h));
        const ConnectionCoeffs cxm = conn(p.displaced(2 * d, -h));
        const ConnectionCoeffs cyp = conn(p.displaced(2 * d + 1, h));
        const ConnectionCoeffs cym = conn(p.displaced(2 * d + 1, -h));
        dbar_hol[d].assign(n, CMat(n));
        dz_mixed[d].assign(n, CMat(n));
        const double q = 0.25 / h;
        for (int l = 0; l < n; ++l) {
            const CMat dx_h = (cxp.hol[l] - cxm.hol[l]) * cxd(q, 0.0);
            const CMat dy_h = (cyp.hol[l] - cym.hol[l]) * cxd(0.0, q);
            dbar_hol[d][l] = dx_h + dy_h;  // d/dzbar = (d/dx + i d/dy)/2
            const CMat dx_m = (cxp.mixed[l] - cxm.mixed[l]) * cxd(q, 0.0);
            const CMat dy_m = (cyp.mixed[l] - cym.mixed[l]) * cxd(0.0, -q);
            dz_mixed[d][l] = dx_m + dy_m;  // d/dz = (d/dx - i d/dy)/2
        }
    }

    LCCurvature out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    cxd acc = dbar_hol[j][l](i, k) - dz_mixed[i][l](j, k);
                    for (int s = 0; s < n; ++s)
                        acc += c0.hol[s](i, k) * c0.mixed[l](j, s) -
                               c0.mixed[s](j, k) * c0.hol[l](s, i);
                    out.upper(i, j, k, l) = -acc;
                }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cxd tr;
            for (int k = 0; k < n; ++k) tr += out.upper(i, j, k, k);
            out.ricci.coeff(i, j) = tr;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    cxd acc;
                    for (int s = 0; s < n; ++s) acc += out.upper(i, j, k, s) * mv.g(s, l);
                    out.lowered(i, j, k, l) = acc;
                }
    cxd s;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    s += mv.g_inv(i, j) * mv.g_inv(k, l) * out.lowered(i, j, k, l);
    out.scalar_full = s;
    out.scalar = s.real();
    return out;
}

// ------------------------------------------------------------ line bundle ----
// Curvature form of a positive fiber weight in the anti-canonical sense:
//   sqrt(-1) (d2 log weight / dz^i dzbar^j) dz^i ^ dzbar^j
// (sqrt(-1) implicit in Form11).  A weight (Im w)^2 on the half-plane chart
// reports the profile -1/(2 (Im w)^2) on its (w, wbar) entry.  Richardson
// extrapolation of the nested stencil keeps the truncation error well below
// the 1e-8 scale the profile checks run at.
inline Form11 line_bundle_ricci(const FieldExpr& weight, const ChartPoint& p) {
    const int n = p.n();
    if (!(weight.evaluate(p) > 0.0))
        throw DomainError("line-bundle weight must be positive at " + p.describe());
    auto logw = [&](const ChartPoint& q) {
        const double v = weight.evaluate(q);
        if (!(v > 0.0))
            throw DomainError("line-bundle weight must be positive at " + q.describe());
        return cxd(std::log(v), 0.0);
    };
    const double h = 1e-3 * std::max(1.0, p.norm());
    Form11 r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cxd coarse = wirtinger_mixed(logw, p, i, j, h);
            const cxd fine = wirtinger_mixed(logw, p, i, j, 0.5 * h);
            r.coeff(i, j) = (4.0 * fine - coarse) / 3.0;
        }
    return r;
}

// ------------------------------------------------------------ convenience ----
struct CurvatureBundle {
    Tensor4 chern_full;
    Form11 chern_ricci;
    double chern_scalar;
    Tensor4 lc_upper;
    Tensor4 lc_lowered;
    Form11 lc_ricci;
    double lc_scalar;

    explicit CurvatureBundle(int n)
        : chern_full(n), chern_ricci(n), chern_scalar(0.0), lc_upper(n), lc_lowered(n),
          lc_ricci(n), lc_scalar(0.0) {}
};

inline CurvatureBundle curvature_bundle(const MetricPtr& metric, const ChartPoint& p,
                                        DerivSource mode = DerivSource::Analytic,
                                        double step = 0.0) {
    MetricValue mv = evaluate_metric(metric, p, mode, step);
    CurvatureBundle b(mv.dim());
    b.chern_full = chern_curvature(mv);
    b.chern_ricci = chern_ricci(mv, b.chern_full);
    b.chern_scalar = chern_scalar(mv, b.chern_ricci);
    LCCurvature lc = lc_curvature(metric, p, mode, step);
    b.lc_upper = lc.upper;
    b.lc_lowered = lc.lowered;
    b.lc_ricci = lc.ricci;
    b.lc_scalar = lc.scalar;
    return b;
}

}  // namespace hermgeo
