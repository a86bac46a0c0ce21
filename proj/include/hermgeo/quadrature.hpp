#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "hermgeo/curvature.hpp"
#include "hermgeo/forms.hpp"
#include "hermgeo/hodge.hpp"
#include "hermgeo/metric.hpp"

namespace hermgeo {

// ------------------------------------------------------- Gauss-Legendre ----
// Classic nodes/weights on [-1, 1] by Newton iteration on the Legendre
// recurrence; k up to a few hundred is far more than the grids here use.
inline void gauss_legendre(int k, std::vector<double>& x, std::vector<double>& w) {
    if (k < 1) throw Error("gauss_legendre: need at least one node");
    x.assign(k, 0.0);
    w.assign(k, 0.0);
    for (int i = 0; i < k; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int m = 2; m <= k; ++m) {
                const double p2 = ((2 * m - 1) * t * p1 - (m - 1) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// ------------------------------------------------------ integration grid ----
// Product grid over the annulus {r_lo < |z| <= r_hi} in C^n (the fundamental
// domain of the z -> z/2 identification when (r_lo, r_hi) = (1/2, 1)):
//   * radius: Gauss-Legendre in t = log r, weights carrying the full
//     e^{2nt} = r^{2n-1} dr Jacobian (the deck action is a shift in t, so the
//     shifted-domain grid is literally the same grid translated);
//   * sphere S^{2n-1}: product of Gauss-Legendre angles theta_m over [0, pi]
//     with measure sin^{2n-1-m}(theta_m), m = 1..2n-2, times a uniform
//     periodic grid in the last angle phi;
//   * direction: u1 = cos t1, u2 = sin t1 cos t2, ..., with the last pair
//     (... cos phi, ... sin phi); z^j = r (u_{2j-1} + i u_{2j}).
// Nodes are traversed in a fixed nested order and sums accumulate
// sequentially, so every integral is bitwise reproducible.
struct IntegrationGrid {
    int n = 0;
    int resolution = 0;
    double r_lo = 0.5, r_hi = 1.0;
    std::vector<double> rad_t, rad_w;               // nodes in t = log r
    std::vector<std::vector<double>> ang_x, ang_w;  // per level: theta nodes / weights
    int phi_count = 0;

    static IntegrationGrid make(int n, int resolution, double r_lo = 0.5,
                                double r_hi = 1.0) {
        if (n < 1) throw Error("integration grid needs dimension >= 1");
        if (!(0.0 < r_lo && r_lo < r_hi)) throw Error("integration grid: bad annulus radii");
        IntegrationGrid g;
        g.n = n;
        g.resolution = resolution;
        g.r_lo = r_lo;
        g.r_hi = r_hi;

        std::vector<double> x, w;
        gauss_legendre(resolution, x, w);
        const double t0 = std::log(r_lo), t1 = std::log(r_hi);
        const double jac = 0.5 * (t1 - t0);
        g.rad_t.resize(resolution);
        g.rad_w.resize(resolution);
        for (int i = 0; i < resolution; ++i) {
            const double t = t0 + 0.5 * (x[i] + 1.0) * (t1 - t0);
            g.rad_t[i] = t;
            g.rad_w[i] = w[i] * jac * std::exp(2.0 * n * t);
        }

        for (int m = 1; m <= 2 * n - 2; ++m) {
            gauss_legendre(resolution, x, w);
            std::vector<double> tx(resolution), tw(resolution);
            for (int i = 0; i < resolution; ++i) {
                const double th = 0.5 * (x[i] + 1.0) * kPi;
                tx[i] = th;
                tw[i] = w[i] * (kPi / 2.0) * std::pow(std::sin(th), 2 * n - 1 - m);
            }
            g.ang_x.push_back(std::move(tx));
            g.ang_w.push_back(std::move(tw));
        }
        g.phi_count = std::max(4, 2 * resolution);
        return g;
    }

    template <class F>
    void for_each_node(F&& fn) const {
        std::vector<double> u(2 * n);
        const double phi_w = 2.0 * kPi / phi_count;
        // odometer over the theta levels
        const int levels = 2 * n - 2;
        std::vector<int> idx(levels, 0);
        for (int ri = 0; ri < static_cast<int>(rad_t.size()); ++ri) {
            const double r = std::exp(rad_t[ri]);
            bool more = true;
            while (more) {
                double aw = rad_w[ri];
                double sinprod = 1.0;
                for (int m = 0; m < levels; ++m) {
                    const double th = ang_x[m][idx[m]];
                    aw *= ang_w[m][idx[m]];
                    u[m] = sinprod * std::cos(th);
                    sinprod *= std::sin(th);
                }
                for (int pi_ = 0; pi_ < phi_count; ++pi_) {
                    const double phi = 2.0 * kPi * pi_ / phi_count;
                    u[2 * n - 2] = sinprod * std::cos(phi);
                    u[2 * n - 1] = sinprod * std::sin(phi);
                    ChartPoint p{std::vector<cxd>(static_cast<std::size_t>(n))};
                    for (int j = 0; j < n; ++j)
                        p.z[j] = r * cxd(u[2 * j], u[2 * j + 1]);
                    fn(p, aw * phi_w);
                }
                // advance the odometer
                int m = levels - 1;
                for (; m >= 0; --m) {
                    if (++idx[m] < static_cast<int>(ang_x[m].size())) break;
                    idx[m] = 0;
                }
                if (m < 0) more = false;
            }
        }
    }

    double total_weight() const {
        double s = 0.0;
        for_each_node([&](const ChartPoint&, double w) { s += w; });
        return s;
    }

    // closed-form Euclidean volume of the annulus, for calibration checks
    double annulus_volume() const {
        const double ball = std::pow(kPi, n) / std::tgamma(n + 1.0);
        return ball * (std::pow(r_hi, 2 * n) - std::pow(r_lo, 2 * n));
    }
};

// ------------------------------------------------------------ integrands ----
enum class Integrand {
    ScalarVolume,       // s_C * omega^n
    RicciWedge,         // Ric * wedge omega^{n-1}
    AdjointNormSq,      // <dbar_star omega, dbar_star omega> * omega^n / n!
    FactorHessianWedge  // sqrt(-1) d dbar f * wedge omega^{n-1}  (needs factor)
};

inline const char* kOmegaConventionString =
    "omega^n top coefficient = n! * 2^n * det(g) against dx1 dy1 ... dxn dyn";
inline const char* kNormConventionString =
    "|alpha|^2 = integral of <alpha,alpha> against omega^n / n!";
inline const char* kSummationConventionString =
    "plain sequential summation in fixed node order (radius, angles, phi)";

// (1,1)-form with implicit sqrt(-1) -> explicit-coefficient sparse form
inline PQForm pq_of_form11(const Form11& a) {
    PQForm f(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) f.add(1u << i, 1u << j, kI * a.coeff(i, j));
    return f;
}

inline double integrate_top_form(const MetricPtr& metric, Integrand which,
                                 const IntegrationGrid& grid,
                                 const FieldExpr* factor = nullptr,
                                 DerivSource mode = DerivSource::Analytic) {
    if (metric->domain() != ChartDomain::PuncturedSpace)
        throw DomainError(
            "integration runs over the punctured-space fundamental annulus; metric '" +
            metric->spec_string() + "' lives on a different chart");
    if (metric->dim() != grid.n) throw DomainError("grid dimension does not match metric");
    if (which == Integrand::FactorHessianWedge && factor == nullptr)
        throw DomainError("factor integrand needs a scalar field");

    const int n = grid.n;
    double sum = 0.0;
    grid.for_each_node([&](const ChartPoint& p, double w) {
        double density = 0.0;
        switch (which) {
            case Integrand::ScalarVolume: {
                MetricValue mv = evaluate_metric(metric, p, mode);
                const PQForm wn = wedge_power(fundamental_form(mv.g), n);
                density = chern_scalar(mv) * top_density(wn).real();
                break;
            }
            case Integrand::RicciWedge: {
                MetricValue mv = evaluate_metric(metric, p, mode);
                const PQForm wn1 = wedge_power(fundamental_form(mv.g), n - 1);
                density = top_density(wedge(pq_of_form11(chern_ricci(mv)), wn1)).real();
                break;
            }
            case Integrand::AdjointNormSq: {
                MetricValue mv = evaluate_metric(metric, p, mode);
                const Form10 a = dbar_star_omega_gamma(mv);
                const PQForm wn = wedge_power(fundamental_form(mv.g), n);
                density = pointwise_norm_sq_10(a, mv) * top_density(wn).real() /
                          std::tgamma(n + 1.0);
                break;
            }
            case Integrand::FactorHessianWedge: {
                MetricValue mv = evaluate_metric(metric, p, mode);
                const double h = default_step(p);
                auto fval = [&](const ChartPoint& q) {
                    return cxd(factor->evaluate(q), 0.0);
                };
                Form11 hess(n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        hess.coeff(i, j) = wirtinger_mixed(fval, p, i, j, h);
                const PQForm wn1 = wedge_power(fundamental_form(mv.g), n - 1);
                density = top_density(wedge(pq_of_form11(hess), wn1)).real();
                break;
            }
        }
        sum += w * density;
    });
    return sum;
}

// --------------------------------------------------------- refinement ----
struct RefinementRow {
    int resolution;
    double value;
};

struct RefinementStudy {
    std::vector<RefinementRow> rows;
    double last_rel_diff = 0.0;  // |v(4R) - v(2R)| / max(|v(4R)|, eps)
    bool converged = false;      // last_rel_diff <= 1%
};

inline RefinementStudy grid_refine_study(const MetricPtr& metric, Integrand which,
                                         int base_resolution, double r_lo = 0.5,
                                         double r_hi = 1.0,
                                         const FieldExpr* factor = nullptr,
                                         DerivSource mode = DerivSource::Analytic) {
    RefinementStudy st;
    for (int mul : {1, 2, 4}) {
        const int R = base_resolution * mul;
        const IntegrationGrid grid = IntegrationGrid::make(metric->dim(), R, r_lo, r_hi);
        st.rows.push_back({R, integrate_top_form(metric, which, grid, factor, mode)});
    }
    const double tail = std::abs(st.rows[2].value);
    st.last_rel_diff =
        std::abs(st.rows[2].value - st.rows[1].value) / std::max(tail, 1e-300);
    st.converged = st.last_rel_diff <= 0.01 || tail < 1e-12;
    return st;
}

// largest structure residual over the grid nodes: the admissibility gate for
// the integral identity that assumes d' dbar omega^{n-1} = 0
inline double max_gauduchon_residual_on_grid(const MetricPtr& metric,
                                             const IntegrationGrid& grid) {
    double worst = 0.0;
    grid.for_each_node([&](const ChartPoint& p, double) {
        worst = std::max(worst, max_abs(gauduchon_residual(metric, p)));
    });
    return worst;
}

}  // namespace hermgeo
