// Points of a holomorphic chart and the domains the built-in metrics live on.
// A ChartPoint is n complex coordinates; the FD engine moves along the 2n
// underlying real coordinates (x_1, y_1, ..., x_n, y_n).
#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "hermgeo/types.hpp"

namespace hermgeo {

struct ChartPoint {
    std::vector<cxd> z;

    ChartPoint() = default;
    explicit ChartPoint(std::vector<cxd> coords) : z(std::move(coords)) {}

    int n() const { return static_cast<int>(z.size()); }

    double x(int i) const { return z[i].real(); }
    double y(int i) const { return z[i].imag(); }

    // Real coordinate k in [0, 2n): even -> Re z_{k/2}, odd -> Im z_{k/2}.
    double real_coord(int k) const { return (k % 2 == 0) ? x(k / 2) : y(k / 2); }

    ChartPoint displaced(int k, double delta) const {
        ChartPoint q = *this;
        cxd& c = q.z[k / 2];
        if (k % 2 == 0)
            c = cxd(c.real() + delta, c.imag());
        else
            c = cxd(c.real(), c.imag() + delta);
        return q;
    }

    // |z|^2 = sum |z_k|^2 (also the squared Euclidean norm of the real coords).
    double abs_sq() const {
        double s = 0.0;
        for (const auto& c : z) s += std::norm(c);
        return s;
    }

    double norm() const { return std::sqrt(abs_sq()); }

    std::string describe() const {
        std::ostringstream os;
        os << "(";
        for (int i = 0; i < n(); ++i) {
            if (i) os << ", ";
            os << z[i].real() << (z[i].imag() < 0 ? "-" : "+") << std::abs(z[i].imag()) << "i";
        }
        os << ")";
        return os.str();
    }
};

// Default FD step: 1e-4 scaled by the point's size once it leaves the unit ball.
inline double default_step(const ChartPoint& p, double base = 1e-4) {
    return base * std::max(1.0, p.norm());
}

enum class ChartDomain {
    FullSpace,           // all of C^n
    PuncturedSpace,      // C^n minus the origin (Hopf charts)
    HalfPlaneTimesPlane  // Im z1 > 0, remaining coordinates free (Inoue chart)
};

// Membership with a safety margin so FD stencils stay strictly inside.
inline bool domain_contains(ChartDomain d, const ChartPoint& p, double margin = 0.0) {
    for (const auto& c : p.z)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    switch (d) {
        case ChartDomain::FullSpace: return true;
        case ChartDomain::PuncturedSpace: return p.norm() > margin;
        case ChartDomain::HalfPlaneTimesPlane: return p.y(0) > margin;
    }
    return false;
}

inline void require_in_domain(ChartDomain d, const ChartPoint& p, double margin,
                              const char* what) {
    if (!domain_contains(d, p, margin))
        throw DomainError(std::string(what) + " at " + p.describe());
}

// Where tests and suites draw sample points for each metric family.
struct SamplingRegion {
    enum class Kind { Annulus, Polydisc, HalfPlaneStrip };
    Kind kind = Kind::Polydisc;
    double lo = 0.0;   // Annulus: inner radius.  Strip: lower bound on Im z1.
    double hi = 0.9;   // Annulus: outer radius.  Polydisc: per-coordinate radius.
                       // Strip: upper bound on Im z1.
};

}  // namespace hermgeo
