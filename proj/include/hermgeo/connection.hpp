#pragma once

#include <vector>

#include "hermgeo/metric.hpp"

namespace hermgeo {

// Connection coefficients of the metric's Levi-Civita connection expressed in
// complex coordinates.  Two blocks survive for a Hermitian metric:
//
//   hol[k](i,j)   = coefficient with two unbarred lower legs, symmetric in
//                   (i,j):  (1/2) sum_l g^{k lbar} (d g_{j lbar}/dz^i
//                                                   + d g_{i lbar}/dz^j)
//   mixed[k](i,j) = coefficient with a barred first lower leg:
//                   (1/2) sum_l g^{k lbar} (d g_{j lbar}/dzbar^i
//                                           - d g_{j ibar}/dzbar^l)
//
// The remaining blocks are conjugates of these and are reconstructed by the
// callers that need them.
struct ConnectionCoeffs {
    std::vector<CMat> hol;    // hol[k](i, j)
    std::vector<CMat> mixed;  // mixed[k](i, j)

    int dim() const { return static_cast<int>(hol.size()); }

    // trace over the upper index against the unbarred lower leg:
    // sum_k mixed[k](i, k); the adjoint of the metric form is built from it
    std::vector<cxd> mixed_trace() const {
        const int n = dim();
        std::vector<cxd> t(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) t[i] += mixed[k](i, k);
        return t;
    }
};

inline ConnectionCoeffs lc_coefficients(const MetricValue& mv) {
    const int n = mv.dim();
    ConnectionCoeffs c;
    c.hol.assign(n, CMat(n));
    c.mixed.assign(n, CMat(n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                cxd h, m;
                for (int l = 0; l < n; ++l) {
                    h += mv.g_inv(k, l) *
                         (mv.jet.d_hol[i](j, l) + mv.jet.d_hol[j](i, l));
                    m += mv.g_inv(k, l) *
                         (mv.jet.d_antihol[i](j, l) - mv.jet.d_antihol[l](j, i));
                }
                c.hol[k](i, j) = 0.5 * h;
                c.mixed[k](i, j) = 0.5 * m;
            }
    return c;
}

inline ConnectionCoeffs lc_coefficients(const MetricPtr& metric, const ChartPoint& p,
                                        DerivSource mode = DerivSource::Analytic,
                                        double step = 0.0) {
    return lc_coefficients(evaluate_metric(metric, p, mode, step));
}

// Residual of the defining property: the connection must reproduce every
// holomorphic first derivative of the metric,
//   d g_{i jbar}/dz^k = sum_s [ hol[s](k,i) g_{s jbar}
//                               + conj(mixed[s](k,j)) g_{i sbar} ].
// Exact (up to roundoff) whenever the jet itself is exact.
inline double metric_compatibility_residual(const MetricValue& mv,
                                            const ConnectionCoeffs& c) {
    const int n = mv.dim();
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                cxd rhs;
                for (int s = 0; s < n; ++s)
                    rhs += c.hol[s](k, i) * mv.g(s, j) +
                           std::conj(c.mixed[s](k, j)) * mv.g(i, s);
                worst = std::max(worst, std::abs(mv.jet.d_hol[k](i, j) - rhs));
            }
    return worst;
}

}  // namespace hermgeo
