// Seeded, platform-stable point sampling.  std::mt19937_64's output sequence
// is pinned by the standard; the mappings to doubles below are hand-rolled so
// reports never depend on libstdc++'s distribution internals.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hermgeo/chart.hpp"
#include "hermgeo/field_expr.hpp"

namespace hermgeo {

class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0, 1)
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // standard normal via Box-Muller; draws a fixed two units per call
    double gauss() {
        const double u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        return r * std::cos(2.0 * kPi * u2);
    }

private:
    std::mt19937_64 eng_;
};

// Uniform sample of the region (uniform w.r.t. Euclidean volume for the
// annulus, per-coordinate area for the polydisc).
inline ChartPoint sample_point(SampleRng& rng, const SamplingRegion& region, int n) {
    std::vector<cxd> z(n);
    switch (region.kind) {
        case SamplingRegion::Kind::Annulus: {
            std::vector<double> dir(2 * n);
            double norm2 = 0.0;
            do {
                norm2 = 0.0;
                for (auto& d : dir) {
                    d = rng.gauss();
                    norm2 += d * d;
                }
            } while (norm2 < 1e-12);
            const double inv = 1.0 / std::sqrt(norm2);
            const double p2n = 2.0 * n;
            const double lo_p = std::pow(region.lo, p2n), hi_p = std::pow(region.hi, p2n);
            const double r = std::pow(lo_p + rng.unit() * (hi_p - lo_p), 1.0 / p2n);
            for (int k = 0; k < n; ++k)
                z[k] = cxd(r * inv * dir[2 * k], r * inv * dir[2 * k + 1]);
            break;
        }
        case SamplingRegion::Kind::Polydisc: {
            for (int k = 0; k < n; ++k) {
                const double r = region.hi * std::sqrt(rng.unit());
                const double th = 2.0 * kPi * rng.unit();
                z[k] = cxd(r * std::cos(th), r * std::sin(th));
            }
            break;
        }
        case SamplingRegion::Kind::HalfPlaneStrip: {
            z[0] = cxd(rng.uniform(-1.0, 1.0), rng.uniform(region.lo, region.hi));
            for (int k = 1; k < n; ++k) {
                const double r = 0.9 * std::sqrt(rng.unit());
                const double th = 2.0 * kPi * rng.unit();
                z[k] = cxd(r * std::cos(th), r * std::sin(th));
            }
            break;
        }
    }
    return ChartPoint(std::move(z));
}

inline std::vector<ChartPoint> sample_points(std::uint64_t seed, const SamplingRegion& region,
                                             int n, int count) {
    SampleRng rng(seed);
    std::vector<ChartPoint> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) pts.push_back(sample_point(rng, region, n));
    return pts;
}

// Small random conformal factors.  Amplitudes are capped so e^f stays within
// [e^-1, e] on every built-in sampling region (coordinates there are <= 1.4
// in absolute value and sin/cos are bounded by 1: 3 terms x 0.2 x 1.4 < 1).
inline FieldExpr seeded_conformal_factor(SampleRng& rng, int n) {
    using K = FieldExpr::Kind;
    auto coeff_times = [&rng](FieldExpr term) {
        double c = 0.05 + 0.15 * rng.unit();
        FieldExpr scaled = FieldExpr::binary(K::Mul, FieldExpr::constant(c), std::move(term));
        if (rng.unit() < 0.5) scaled = FieldExpr::unary(K::Neg, std::move(scaled));
        return scaled;
    };
    auto base_term = [&rng, n]() {
        const int idx = 1 + static_cast<int>(rng.unit() * n);
        const FieldExpr::Axis ax =
            rng.unit() < 0.5 ? FieldExpr::Axis::X : FieldExpr::Axis::Y;
        FieldExpr v = FieldExpr::coord(ax, std::min(idx, n));
        const double pick = rng.unit();
        if (pick < 0.35) return FieldExpr::call(FieldExpr::Fn::Sin, std::move(v));
        if (pick < 0.7) return FieldExpr::call(FieldExpr::Fn::Cos, std::move(v));
        return v;
    };
    const int terms = 1 + static_cast<int>(rng.unit() * 3.0);
    FieldExpr f = coeff_times(base_term());
    for (int t = 1; t < std::min(terms, 3); ++t)
        f = FieldExpr::binary(K::Add, std::move(f), coeff_times(base_term()));
    return f;
}

inline std::vector<FieldExpr> seeded_conformal_factors(std::uint64_t seed, int n, int count) {
    SampleRng rng(seed);
    std::vector<FieldExpr> fs;
    fs.reserve(count);
    for (int k = 0; k < count; ++k) fs.push_back(seeded_conformal_factor(rng, n));
    return fs;
}

}  // namespace hermgeo
