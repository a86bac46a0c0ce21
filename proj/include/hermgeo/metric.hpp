// The metric zoo: built-in Hermitian metric fields on charts, closed-form
// derivative jets where we have them, conformal rescaling, custom
// expression-defined metrics, and the spec-string syntax the CLI uses.
//
// Families and spec strings:
//   flat:n=2                      identity metric on C^n
//   hopf0:n=3                     delta_ij / |z|^2 on C^n minus 0
//   hopfp:n=2                     perturbed Hopf metric (n >= 2), see below
//   fs:n=2                        Fubini-Study affine chart (Kahler reference)
//   inoue-k                       diag(1/(2 (Im w)^2), 1) on (H x C)
//   conformal(<base>; f=<expr>)   e^f times the base metric
//
// The perturbed Hopf metric is
//   g_{a bbar} = (1/|z|^2) ( (n-1)/n * delta_ab + zbar^a z^b / (n |z|^2) )
// with determinant det(g) * |z|^{2n} = ((n-1)/n)^{n-1} (constant on the
// chart; the eigenvalues are 1/|z|^2 once along zbar and ((n-1)/n)/|z|^2 on
// the orthogonal complement).
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hermgeo/chart.hpp"
#include "hermgeo/field_expr.hpp"
#include "hermgeo/jet.hpp"
#include "hermgeo/linalg.hpp"

namespace hermgeo {

class Metric;
using MetricPtr = std::shared_ptr<const Metric>;

class Metric {
public:
    virtual ~Metric() = default;

    virtual int dim() const = 0;
    virtual std::string family() const = 0;
    virtual std::string spec_string() const = 0;
    virtual ChartDomain domain() const = 0;

    virtual SamplingRegion sampling_region() const {
        SamplingRegion r;
        switch (domain()) {
            case ChartDomain::FullSpace:
                r.kind = SamplingRegion::Kind::Polydisc;
                r.hi = 0.9;
                break;
            case ChartDomain::PuncturedSpace:
                r.kind = SamplingRegion::Kind::Annulus;
                r.lo = 0.6;
                r.hi = 1.4;
                break;
            case ChartDomain::HalfPlaneTimesPlane:
                r.kind = SamplingRegion::Kind::HalfPlaneStrip;
                r.lo = 0.5;
                r.hi = 2.0;
                break;
        }
        return r;
    }

    // Metric matrix at p; implementations validate the domain.
    virtual CMat value(const ChartPoint& p) const = 0;

    virtual bool has_analytic_jet() const = 0;
    virtual DerivativeJet analytic_jet(const ChartPoint&, bool /*want_holhol*/) const {
        throw Error("no closed-form derivatives for " + spec_string() + "; use fd mode");
    }

protected:
    void check_point(const ChartPoint& p, const char* ctx) const {
        if (p.n() != dim())
            throw DomainError(std::string(ctx) + ": point has dimension " +
                              std::to_string(p.n()) + ", metric expects " +
                              std::to_string(dim()));
        require_in_domain(domain(), p, 0.0, "point outside chart domain");
    }
};

// ---------------------------------------------------------------- flat ----
class FlatMetric final : public Metric {
public:
    explicit FlatMetric(int n) : n_(n) {
        if (n < 1) throw Error("flat metric requires n >= 1");
    }
    int dim() const override { return n_; }
    std::string family() const override { return "flat"; }
    std::string spec_string() const override { return "flat:n=" + std::to_string(n_); }
    ChartDomain domain() const override { return ChartDomain::FullSpace; }
    CMat value(const ChartPoint& p) const override {
        check_point(p, "flat");
        return CMat::identity(n_);
    }
    bool has_analytic_jet() const override { return true; }
    DerivativeJet analytic_jet(const ChartPoint& p, bool want_holhol) const override {
        check_point(p, "flat");
        DerivativeJet j = DerivativeJet::zeroed(n_);
        j.value = CMat::identity(n_);
        if (want_holhol) j.alloc_holhol();
        return j;
    }

private:
    int n_;
};

// ------------------------------------------------------- hopf standard ----
// g = delta / |z|^2 on C^n minus the origin.
class HopfStandardMetric final : public Metric {
public:
    explicit HopfStandardMetric(int n) : n_(n) {
        if (n < 1) throw Error("hopf0 requires n >= 1");
    }
    int dim() const override { return n_; }
    std::string family() const override { return "hopf-standard"; }
    std::string spec_string() const override { return "hopf0:n=" + std::to_string(n_); }
    ChartDomain domain() const override { return ChartDomain::PuncturedSpace; }
    CMat value(const ChartPoint& p) const override {
        check_point(p, "hopf0");
        CMat g(n_);
        const double r2 = p.abs_sq();
        for (int a = 0; a < n_; ++a) g(a, a) = 1.0 / r2;
        return g;
    }
    bool has_analytic_jet() const override { return true; }
    DerivativeJet analytic_jet(const ChartPoint& p, bool want_holhol) const override {
        check_point(p, "hopf0");
        const double r2 = p.abs_sq();
        const double r4 = r2 * r2, r6 = r4 * r2;
        DerivativeJet j = DerivativeJet::zeroed(n_);
        for (int a = 0; a < n_; ++a) j.value(a, a) = 1.0 / r2;
        for (int k = 0; k < n_; ++k) {
            const cxd zb = std::conj(p.z[k]);
            for (int a = 0; a < n_; ++a) {
                j.d_hol[k](a, a) = -zb / r4;
                j.d_antihol[k](a, a) = -p.z[k] / r4;
            }
        }
        for (int i = 0; i < n_; ++i)
            for (int jj = 0; jj < n_; ++jj) {
                const cxd c = 2.0 * std::conj(p.z[i]) * p.z[jj] / r6 -
                              (i == jj ? 1.0 / r4 : 0.0);
                for (int a = 0; a < n_; ++a) j.d_mixed[i][jj](a, a) = c;
            }
        if (want_holhol) {
            j.alloc_holhol();
            for (int i = 0; i < n_; ++i)
                for (int k = 0; k < n_; ++k) {
                    const cxd c = 2.0 * std::conj(p.z[i]) * std::conj(p.z[k]) / r6;
                    for (int a = 0; a < n_; ++a) j.d_holhol[i][k](a, a) = c;
                }
        }
        return j;
    }

private:
    int n_;
};

// ------------------------------------------------------ hopf perturbed ----
class HopfPerturbedMetric final : public Metric {
public:
    explicit HopfPerturbedMetric(int n) : n_(n) {
        if (n < 2) throw Error("hopfp requires n >= 2");
    }
    int dim() const override { return n_; }
    std::string family() const override { return "hopf-perturbed"; }
    std::string spec_string() const override { return "hopfp:n=" + std::to_string(n_); }
    ChartDomain domain() const override { return ChartDomain::PuncturedSpace; }

    CMat value(const ChartPoint& p) const override {
        check_point(p, "hopfp");
        const double r2 = p.abs_sq();
        const double c1 = (n_ - 1.0) / n_, c2 = 1.0 / n_;
        CMat g(n_);
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                cxd v = c2 * std::conj(p.z[a]) * p.z[b] / (r2 * r2);
                if (a == b) v += c1 / r2;
                g(a, b) = v;
            }
        return g;
    }

    // Closed-form inverse published with the metric; kept as a separate route
    // so tests can pit it against LU inversion.
    CMat closed_form_inverse(const ChartPoint& p) const {
        check_point(p, "hopfp");
        const double r2 = p.abs_sq();
        CMat ginv(n_);
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                cxd v = -p.z[a] * std::conj(p.z[b]) / (n_ - 1.0);
                if (a == b) v += r2 * n_ / (n_ - 1.0);
                ginv(a, b) = v;
            }
        return ginv;
    }

    bool has_analytic_jet() const override { return true; }
    DerivativeJet analytic_jet(const ChartPoint& p, bool want_holhol) const override {
        check_point(p, "hopfp");
        const int n = n_;
        const double r2 = p.abs_sq();
        const double r4 = r2 * r2, r6 = r4 * r2, r8 = r6 * r2;
        const double c1 = (n - 1.0) / n, c2 = 1.0 / n;
        auto zc = [&](int a) { return std::conj(p.z[a]); };
        DerivativeJet j = DerivativeJet::zeroed(n);
        j.value = value(p);
        for (int k = 0; k < n; ++k)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    cxd v = -2.0 * c2 * zc(a) * p.z[b] * zc(k) / r6;
                    if (a == b) v += -c1 * zc(k) / r4;
                    if (k == b) v += c2 * zc(a) / r4;
                    j.d_hol[k](a, b) = v;
                    cxd w = -2.0 * c2 * zc(a) * p.z[b] * p.z[k] / r6;
                    if (a == b) w += -c1 * p.z[k] / r4;
                    if (k == a) w += c2 * p.z[b] / r4;
                    j.d_antihol[k](a, b) = w;
                }
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        cxd v = c1 * ((a == b ? 1.0 : 0.0) *
                                      (2.0 * zc(i) * p.z[jj] / r6 -
                                       (i == jj ? 1.0 / r4 : 0.0)));
                        cxd w = 6.0 * zc(a) * p.z[b] * zc(i) * p.z[jj] / r8;
                        if (i == b && a == jj) w += 1.0 / r4;
                        if (i == b) w += -2.0 * zc(a) * p.z[jj] / r6;
                        if (a == jj) w += -2.0 * p.z[b] * zc(i) / r6;
                        if (i == jj) w += -2.0 * zc(a) * p.z[b] / r6;
                        j.d_mixed[i][jj](a, b) = v + c2 * w;
                    }
        if (want_holhol) {
            j.alloc_holhol();
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) {
                            cxd v = c1 * (a == b ? 2.0 * zc(i) * zc(k) / r6 : 0.0);
                            cxd w = 6.0 * zc(a) * p.z[b] * zc(i) * zc(k) / r8;
                            if (k == b) w += -2.0 * zc(a) * zc(i) / r6;
                            if (i == b) w += -2.0 * zc(a) * zc(k) / r6;
                            j.d_holhol[i][k](a, b) = v + c2 * w;
                        }
        }
        return j;
    }

private:
    int n_;
};

// -------------------------------------------------------- fubini-study ----
// Affine chart g_{a bbar} = d^2 log(1 + |z|^2) / dz^a dzbar^b
//            = delta_ab / u - zbar^a z^b / u^2,  u = 1 + |z|^2.
class FubiniStudyMetric final : public Metric {
public:
    explicit FubiniStudyMetric(int n) : n_(n) {
        if (n < 1) throw Error("fs requires n >= 1");
    }
    int dim() const override { return n_; }
    std::string family() const override { return "fubini-study"; }
    std::string spec_string() const override { return "fs:n=" + std::to_string(n_); }
    ChartDomain domain() const override { return ChartDomain::FullSpace; }

    CMat value(const ChartPoint& p) const override {
        check_point(p, "fs");
        const double u = 1.0 + p.abs_sq();
        CMat g(n_);
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                cxd v = -std::conj(p.z[a]) * p.z[b] / (u * u);
                if (a == b) v += 1.0 / u;
                g(a, b) = v;
            }
        return g;
    }

    bool has_analytic_jet() const override { return true; }
    DerivativeJet analytic_jet(const ChartPoint& p, bool want_holhol) const override {
        check_point(p, "fs");
        const int n = n_;
        const double u = 1.0 + p.abs_sq();
        const double u2 = u * u, u3 = u2 * u, u4 = u3 * u;
        auto zc = [&](int a) { return std::conj(p.z[a]); };
        DerivativeJet j = DerivativeJet::zeroed(n);
        j.value = value(p);
        for (int k = 0; k < n; ++k)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    cxd v = 2.0 * zc(a) * p.z[b] * zc(k) / u3;
                    if (a == b) v += -zc(k) / u2;
                    if (k == b) v += -zc(a) / u2;
                    j.d_hol[k](a, b) = v;
                    cxd w = 2.0 * zc(a) * p.z[b] * p.z[k] / u3;
                    if (a == b) w += -p.z[k] / u2;
                    if (k == a) w += -p.z[b] / u2;
                    j.d_antihol[k](a, b) = w;
                }
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        cxd v = -6.0 * zc(a) * p.z[b] * zc(k) * p.z[l] / u4;
                        v += 2.0 *
                             ((a == b ? zc(k) * p.z[l] : cxd{}) +
                              (k == b ? zc(a) * p.z[l] : cxd{}) +
                              (a == l ? zc(k) * p.z[b] : cxd{}) +
                              (k == l ? zc(a) * p.z[b] : cxd{})) /
                             u3;
                        if (a == b && k == l) v += -1.0 / u2;
                        if (k == b && a == l) v += -1.0 / u2;
                        j.d_mixed[k][l](a, b) = v;
                    }
        if (want_holhol) {
            j.alloc_holhol();
            for (int m = 0; m < n; ++m)
                for (int k = 0; k < n; ++k)
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) {
                            cxd v = -6.0 * zc(a) * p.z[b] * zc(k) * zc(m) / u4;
                            v += 2.0 *
                                 ((a == b ? zc(k) * zc(m) : cxd{}) +
                                  (k == b ? zc(a) * zc(m) : cxd{}) +
                                  (m == b ? zc(a) * zc(k) : cxd{})) /
                                 u3;
                            j.d_holhol[m][k](a, b) = v;
                        }
        }
        return j;
    }

private:
    int n_;
};

// --------------------------------------------------------- inoue model ----
// Chart (w, z) with Im w > 0; metric diag(1/(2 (Im w)^2), 1).  Only the
// (0,0) entry varies, and only through w.
class InoueModelMetric final : public Metric {
public:
    int dim() const override { return 2; }
    std::string family() const override { return "inoue-model"; }
    std::string spec_string() const override { return "inoue-k"; }
    ChartDomain domain() const override { return ChartDomain::HalfPlaneTimesPlane; }

    CMat value(const ChartPoint& p) const override {
        check_point(p, "inoue-k");
        const double yw = p.y(0);
        CMat g(2);
        g(0, 0) = 0.5 / (yw * yw);
        g(1, 1) = 1.0;
        return g;
    }

    bool has_analytic_jet() const override { return true; }
    DerivativeJet analytic_jet(const ChartPoint& p, bool want_holhol) const override {
        check_point(p, "inoue-k");
        const double yw = p.y(0);
        const double y3 = yw * yw * yw, y4 = y3 * yw;
        DerivativeJet j = DerivativeJet::zeroed(2);
        j.value = value(p);
        j.d_hol[0](0, 0) = cxd(0.0, 0.5) / y3;
        j.d_antihol[0](0, 0) = cxd(0.0, -0.5) / y3;
        j.d_mixed[0][0](0, 0) = 0.75 / y4;
        if (want_holhol) {
            j.alloc_holhol();
            j.d_holhol[0][0](0, 0) = -0.75 / y4;
        }
        return j;
    }
};

// ------------------------------------------------------------ conformal ----
// e^f times a base metric.  The factor's Wirtinger derivatives always come
// from the FD engine (the DSL is never differentiated symbolically); in
// analytic mode they are combined with the base's closed-form jet by the
// product rule, which keeps the accuracy O(step^2).
class ConformalMetric final : public Metric {
public:
    ConformalMetric(MetricPtr base, FieldExpr factor)
        : base_(std::move(base)), f_(std::move(factor)) {}

    int dim() const override { return base_->dim(); }
    std::string family() const override { return "conformal(" + base_->family() + ")"; }
    std::string spec_string() const override {
        return "conformal(" + base_->spec_string() + "; f=" + f_.print() + ")";
    }
    ChartDomain domain() const override { return base_->domain(); }
    SamplingRegion sampling_region() const override { return base_->sampling_region(); }

    const MetricPtr& base() const { return base_; }
    const FieldExpr& factor() const { return f_; }

    CMat value(const ChartPoint& p) const override {
        return std::exp(f_.evaluate(p)) * cxd(1.0) * base_->value(p);
    }

    bool has_analytic_jet() const override { return base_->has_analytic_jet(); }

    DerivativeJet analytic_jet(const ChartPoint& p, bool want_holhol) const override {
        const int n = dim();
        const double step = default_step(p);
        auto scalar = [this](const ChartPoint& q) { return cxd(f_.evaluate(q), 0.0); };

        std::vector<cxd> fh(n), fa(n);
        for (int i = 0; i < n; ++i) {
            fh[i] = wirtinger_derivative(scalar, p, i, WirtingerKind::Holomorphic, step);
            fa[i] = wirtinger_derivative(scalar, p, i, WirtingerKind::Antiholomorphic, step);
        }
        std::vector<std::vector<cxd>> fmix(n, std::vector<cxd>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) fmix[i][j] = wirtinger_mixed(scalar, p, i, j, step);

        DerivativeJet base = base_->analytic_jet(p, want_holhol);
        const double ef = std::exp(f_.evaluate(p));

        DerivativeJet out = DerivativeJet::zeroed(n);
        out.step = step;
        out.value = ef * cxd(1.0) * base.value;
        for (int k = 0; k < n; ++k) {
            out.d_hol[k] = (fh[k] * base.value + base.d_hol[k]) * cxd(ef);
            out.d_antihol[k] = (fa[k] * base.value + base.d_antihol[k]) * cxd(ef);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CMat m = (fh[i] * fa[j] + fmix[i][j]) * base.value;
                m += fh[i] * base.d_antihol[j];
                m += fa[j] * base.d_hol[i];
                m += base.d_mixed[i][j];
                out.d_mixed[i][j] = cxd(ef) * m;
            }
        if (want_holhol) {
            out.alloc_holhol();
            std::vector<std::vector<cxd>> fhh(n, std::vector<cxd>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) fhh[i][j] = wirtinger_holhol(scalar, p, i, j, step);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    CMat m = (fh[i] * fh[j] + fhh[i][j]) * base.value;
                    m += fh[i] * base.d_hol[j];
                    m += fh[j] * base.d_hol[i];
                    m += base.d_holhol[i][j];
                    out.d_holhol[i][j] = cxd(ef) * m;
                }
        }
        return out;
    }

private:
    MetricPtr base_;
    FieldExpr f_;
};

// --------------------------------------------------------------- custom ----
// Entries given as (real part, imaginary part) expression pairs for the
// upper triangle; the lower triangle is the conjugate, the diagonal keeps
// only its real part.  No closed-form jets.
class CustomMetric final : public Metric {
public:
    struct Entry {
        FieldExpr re, im;
    };

    CustomMetric(int n, std::vector<std::vector<Entry>> upper,
                 ChartDomain dom = ChartDomain::FullSpace)
        : n_(n), upper_(std::move(upper)), dom_(dom) {
        if (n < 1) throw Error("custom metric requires n >= 1");
    }

    int dim() const override { return n_; }
    std::string family() const override { return "custom"; }
    std::string spec_string() const override { return "custom:n=" + std::to_string(n_); }
    ChartDomain domain() const override { return dom_; }

    CMat value(const ChartPoint& p) const override {
        check_point(p, "custom");
        CMat g(n_);
        for (int a = 0; a < n_; ++a)
            for (int b = a; b < n_; ++b) {
                const Entry& e = upper_[a][b - a];
                const double re = e.re.evaluate(p);
                const double im = (a == b) ? 0.0 : e.im.evaluate(p);
                g(a, b) = cxd(re, im);
                if (a != b) g(b, a) = cxd(re, -im);
            }
        return g;
    }

    bool has_analytic_jet() const override { return false; }

private:
    int n_;
    std::vector<std::vector<Entry>> upper_;
    ChartDomain dom_;
};

// ------------------------------------------------------------- factory ----
inline MetricPtr make_flat(int n) { return std::make_shared<FlatMetric>(n); }
inline MetricPtr make_hopf_standard(int n) { return std::make_shared<HopfStandardMetric>(n); }
inline MetricPtr make_hopf_perturbed(int n) { return std::make_shared<HopfPerturbedMetric>(n); }
inline MetricPtr make_fubini_study(int n) { return std::make_shared<FubiniStudyMetric>(n); }
inline MetricPtr make_inoue_model() { return std::make_shared<InoueModelMetric>(); }

inline MetricPtr conformal_rescale(MetricPtr base, FieldExpr f) {
    return std::make_shared<ConformalMetric>(std::move(base), std::move(f));
}

inline MetricPtr conformal_flat(int n, const std::string& factor) {
    return conformal_rescale(make_flat(n), FieldExpr::parse(factor));
}

// ------------------------------------------------------- spec strings ----
namespace detail {

inline int parse_dim_suffix(const std::string& s, std::size_t at) {
    // expects ":n=<digits>" starting at 'at' and running to the end
    if (s.compare(at, 3, ":n=") != 0)
        throw ParseError(at + 1, "expected ':n=<dim>' in metric spec '" + s + "'");
    const std::string digits = s.substr(at + 3);
    if (digits.empty()) throw ParseError(at + 4, "missing dimension in metric spec");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(at + 4, "dimension must be a positive integer");
    return std::atoi(digits.c_str());
}

}  // namespace detail

inline MetricPtr parse_metric_spec(const std::string& raw) {
    // trim
    std::size_t b = raw.find_first_not_of(" \t");
    std::size_t e = raw.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError(1, "empty metric spec");
    const std::string s = raw.substr(b, e - b + 1);

    if (s.rfind("conformal(", 0) == 0) {
        if (s.back() != ')')
            throw ParseError(s.size(), "expected ')' to close 'conformal('");
        const std::string inner = s.substr(10, s.size() - 11);
        // split at the top-level "; f=" (nested conformal bases keep theirs)
        int depth = 0;
        std::size_t split = std::string::npos;
        for (std::size_t k = 0; k + 3 < inner.size(); ++k) {
            if (inner[k] == '(') ++depth;
            else if (inner[k] == ')') --depth;
            else if (depth == 0 && inner.compare(k, 4, "; f=") == 0) {
                split = k;
                break;
            }
        }
        if (split == std::string::npos)
            throw ParseError(11, "expected '; f=<expr>' inside conformal(...)");
        MetricPtr base = parse_metric_spec(inner.substr(0, split));
        FieldExpr f = FieldExpr::parse(inner.substr(split + 4));
        return conformal_rescale(std::move(base), std::move(f));
    }

    if (s == "inoue-k") return make_inoue_model();

    const std::size_t colon = s.find(':');
    const std::string head = s.substr(0, colon == std::string::npos ? s.size() : colon);
    if (head == "flat" || head == "hopf0" || head == "hopfp" || head == "fs") {
        if (colon == std::string::npos)
            throw ParseError(s.size() + 1, "metric '" + head + "' needs ':n=<dim>'");
        const int n = detail::parse_dim_suffix(s, colon);
        if (head == "flat") return make_flat(n);
        if (head == "hopf0") return make_hopf_standard(n);
        if (head == "hopfp") return make_hopf_perturbed(n);
        return make_fubini_study(n);
    }
    throw ParseError(1, "unknown metric family '" + head + "'");
}

// Rows for the CLI's list-metrics output.
struct MetricCatalogRow {
    std::string spec;
    std::string family;
    std::string dimensions;
    std::string domain;
};

inline std::vector<MetricCatalogRow> metric_catalog() {
    return {
        {"flat:n=<k>", "flat", "n >= 1", "C^n"},
        {"hopf0:n=<k>", "hopf-standard", "n >= 1", "C^n minus 0"},
        {"hopfp:n=<k>", "hopf-perturbed", "n >= 2", "C^n minus 0"},
        {"fs:n=<k>", "fubini-study", "n >= 1", "C^n (affine chart)"},
        {"inoue-k", "inoue-model", "n = 2 fixed", "Im z1 > 0"},
        {"conformal(<base>; f=<expr>)", "conformal", "base's n", "base's domain"},
    };
}

// ------------------------------------------------------ metric values ----
struct MetricValue {
    CMat g;
    CMat g_inv;  // satisfies sum_q g_inv(i,q) * g(k,q) = delta_ik
    double det = 0.0;
    double det_imag_residue = 0.0;
    DerivativeJet jet;

    int dim() const { return g.size(); }
};

inline DerivativeJet jet_at(const MetricPtr& metric, const ChartPoint& p, DerivSource mode,
                            double step = 0.0, bool want_holhol = false) {
    const double h = (step > 0.0) ? step : default_step(p);
    // nested FD stencils reach 2*h from p in each real coordinate
    require_in_domain(metric->domain(), p, 2.5 * h,
                      "finite-difference stencil leaves the chart domain");
    if (mode == DerivSource::Analytic) {
        DerivativeJet j = metric->analytic_jet(p, want_holhol);
        j.source = DerivSource::Analytic;
        if (j.step == 0.0) j.step = h;
        return j;
    }
    auto field = [&metric](const ChartPoint& q) { return metric->value(q); };
    return fd_jet(field, p, h, want_holhol);
}

inline MetricValue evaluate_metric(const MetricPtr& metric, const ChartPoint& p,
                                   DerivSource mode = DerivSource::Analytic,
                                   double step = 0.0, bool want_holhol = false) {
    MetricValue mv;
    mv.jet = jet_at(metric, p, mode, step, want_holhol);
    mv.g = mv.jet.value;
    mv.g_inv = invert_metric(mv.g, p.describe());
    const cxd d = determinant(mv.g);
    mv.det = d.real();
    mv.det_imag_residue = std::abs(d.imag());
    if (!(mv.det > 0.0))
        throw DegenerateMetricError("metric degenerate at " + p.describe() +
                                    " (non-positive determinant)");
    return mv;
}

}  // namespace hermgeo
