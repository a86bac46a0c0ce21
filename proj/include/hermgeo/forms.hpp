#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hermgeo/chart.hpp"
#include "hermgeo/linalg.hpp"
#include "hermgeo/types.hpp"
#include "hermgeo/wirtinger.hpp"

namespace hermgeo {

// ----------------------------------------------------------- low forms ----
// Coefficient containers for the handful of form degrees the identities use.
// Convention: Form10/Form01 store the full complex coefficients (alpha =
// sum a_i dz^i).  Form11 and Form21 store their coefficients with the global
// sqrt(-1) prefactor implicit:
//   Form11 A  represents  sqrt(-1) * A(i,j) dz^i ^ dzbar^j
//   Form21 T  represents  sqrt(-1) * T(k,i,j) dz^k ^ dz^i ^ dzbar^j
// so that positive metrics have positive-definite Form11 matrices.

struct Form10 {
    std::vector<cxd> a;
    explicit Form10(int n) : a(n) {}
    int dim() const { return static_cast<int>(a.size()); }
    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a) m = std::max(m, std::abs(v));
        return m;
    }
};

struct Form01 {
    std::vector<cxd> b;
    explicit Form01(int n) : b(n) {}
    int dim() const { return static_cast<int>(b.size()); }
    double max_abs() const {
        double m = 0.0;
        for (const auto& v : b) m = std::max(m, std::abs(v));
        return m;
    }
};

// conj(sum a_i dz^i) = sum conj(a_i) dzbar^i and back
inline Form01 conjugate(const Form10& f) {
    Form01 g(f.dim());
    for (int i = 0; i < f.dim(); ++i) g.b[i] = std::conj(f.a[i]);
    return g;
}
inline Form10 conjugate(const Form01& f) {
    Form10 g(f.dim());
    for (int i = 0; i < f.dim(); ++i) g.a[i] = std::conj(f.b[i]);
    return g;
}

struct Form11 {
    CMat coeff;
    explicit Form11(int n) : coeff(n) {}
    explicit Form11(CMat m) : coeff(std::move(m)) {}
    int dim() const { return coeff.size(); }
    double max_abs() const { return coeff.max_abs(); }
    // a (1,1)-form with implicit sqrt(-1) is real iff its matrix is Hermitian
    bool is_real(double tol) const { return coeff.is_hermitian(tol); }
};

struct Form21 {
    int n;
    std::vector<cxd> t;  // (k, i, j) row-major
    explicit Form21(int n_) : n(n_), t(static_cast<std::size_t>(n_) * n_ * n_) {}
    cxd& operator()(int k, int i, int j) { return t[(k * n + i) * static_cast<std::size_t>(n) + j]; }
    const cxd& operator()(int k, int i, int j) const {
        return t[(k * n + i) * static_cast<std::size_t>(n) + j];
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& v : t) m = std::max(m, std::abs(v));
        return m;
    }
};

// --------------------------------------------------- general (p,q) forms ----
// Sparse coefficient algebra over the basis dz^I ^ dzbar^J, with both index
// sets held as ascending bitmasks and all holomorphic factors written first:
//   form = sum_{I,J} c(I,J) dz^I ^ dzbar^J,   dz^I = dz^{i1}^...^dz^{ip},
// i1 < i2 < ... .  Unlike the fixed-degree containers above, coefficients here
// are stored verbatim (no implicit prefactor): this is the workhorse for wedge
// powers and exterior derivatives where mixed prefactors would not survive.
struct PQForm {
    int n = 0;
    std::map<std::pair<unsigned, unsigned>, cxd> c;

    PQForm() = default;
    explicit PQForm(int n_) : n(n_) {}

    // parity of the permutation sorting (a ascending, b ascending) into one
    // ascending run; masks must be disjoint
    static double merge_sign(unsigned a, unsigned b) {
        int inversions = 0;
        for (unsigned rest = b; rest != 0; rest &= rest - 1) {
            const int y = __builtin_ctz(rest);
            inversions += __builtin_popcount(a >> (y + 1));
        }
        return (inversions % 2 == 0) ? 1.0 : -1.0;
    }

    void add(unsigned I, unsigned J, cxd v) {
        if (v == cxd(0.0)) return;
        c[{I, J}] += v;
    }
    cxd coeff(unsigned I, unsigned J) const {
        auto it = c.find({I, J});
        return it == c.end() ? cxd(0.0) : it->second;
    }
    unsigned full_mask() const { return (n >= 32) ? ~0u : ((1u << n) - 1u); }
    cxd top_coeff() const { return coeff(full_mask(), full_mask()); }

    PQForm& operator+=(const PQForm& o) {
        for (const auto& [k, v] : o.c) c[k] += v;
        return *this;
    }
    PQForm& operator-=(const PQForm& o) {
        for (const auto& [k, v] : o.c) c[k] -= v;
        return *this;
    }
    PQForm& operator*=(cxd s) {
        for (auto& [k, v] : c) v *= s;
        return *this;
    }
    friend PQForm operator+(PQForm x, const PQForm& y) { return x += y; }
    friend PQForm operator-(PQForm x, const PQForm& y) { return x -= y; }
    friend PQForm operator*(PQForm x, cxd s) { return x *= s; }
    friend PQForm operator*(cxd s, PQForm x) { return x *= s; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [k, v] : c) m = std::max(m, std::abs(v));
        return m;
    }
};

inline PQForm wedge(const PQForm& x, const PQForm& y) {
    PQForm r(x.n);
    for (const auto& [kx, vx] : x.c) {
        const auto [I1, J1] = kx;
        for (const auto& [ky, vy] : y.c) {
            const auto [I2, J2] = ky;
            if ((I1 & I2) != 0 || (J1 & J2) != 0) continue;
            // move dzbar^{J1} past dz^{I2}: one sign per crossing pair
            const int crossings = __builtin_popcount(J1) * __builtin_popcount(I2);
            double s = PQForm::merge_sign(I1, I2) * PQForm::merge_sign(J1, J2);
            if (crossings % 2 != 0) s = -s;
            r.add(I1 | I2, J1 | J2, vx * vy * s);
        }
    }
    return r;
}

inline PQForm wedge_power(const PQForm& x, int m) {
    if (m < 0) throw Error("wedge_power: negative exponent");
    PQForm r(x.n);
    r.add(0, 0, cxd(1.0));
    for (int i = 0; i < m; ++i) r = wedge(r, x);
    return r;
}

// the metric's fundamental form  omega = sqrt(-1) g(k,l) dz^k ^ dzbar^l
inline PQForm fundamental_form(const CMat& g) {
    const int n = g.size();
    PQForm w(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) w.add(1u << k, 1u << l, kI * g(k, l));
    return w;
}

// density of a top-degree (n,n) form relative to the Euclidean volume element
// dx_1 dy_1 ... dx_n dy_n:
//   dz^1^...^dz^n ^ dzbar^1^...^dzbar^n
//     = (-1)^{n(n-1)/2} (-2i)^n  dx_1 dy_1 ... dx_n dy_n
inline cxd top_density(const PQForm& f) {
    cxd scale(1.0);
    for (int i = 0; i < f.n; ++i) scale *= cxd(0.0, -2.0);
    if ((f.n * (f.n - 1) / 2) % 2 != 0) scale = -scale;
    return f.top_coeff() * scale;
}

// ------------------------------------------- exterior derivatives of fields ----
using PQField = std::function<PQForm(const ChartPoint&)>;

// d' (holomorphic exterior derivative) of a PQForm-valued field by central
// differences: sum_k dz^k ^ (d field / dz^k)
inline PQForm pq_partial_hol(const PQField& f, const ChartPoint& p, double step) {
    PQForm r(f(p).n);
    for (int k = 0; k < r.n; ++k) {
        PQForm dk = wirtinger_derivative(f, p, k, WirtingerKind::Holomorphic, step);
        const unsigned bk = 1u << k;
        for (const auto& [key, v] : dk.c) {
            const auto [I, J] = key;
            if ((I & bk) != 0) continue;
            r.add(I | bk, J, v * PQForm::merge_sign(bk, I));
        }
    }
    return r;
}

// d'' (antiholomorphic): sum_k dzbar^k ^ (d field / dzbar^k); the new dzbar^k
// crosses every dz factor already present
inline PQForm pq_partial_antihol(const PQField& f, const ChartPoint& p, double step) {
    PQForm r(f(p).n);
    for (int k = 0; k < r.n; ++k) {
        PQForm dk = wirtinger_derivative(f, p, k, WirtingerKind::Antiholomorphic, step);
        const unsigned bk = 1u << k;
        for (const auto& [key, v] : dk.c) {
            const auto [I, J] = key;
            if ((J & bk) != 0) continue;
            double s = PQForm::merge_sign(bk, J);
            if (__builtin_popcount(I) % 2 != 0) s = -s;
            r.add(I, J | bk, v * s);
        }
    }
    return r;
}

}  // namespace hermgeo
