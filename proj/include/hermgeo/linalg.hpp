// Small dense complex matrices plus the few factorizations the rest of the
// library needs: LU with partial pivoting for inverses/determinants and a
// Cholesky attempt as the positive-definiteness probe.  Sizes here are the
// chart dimension (2..4 in practice), so everything is O(n^3) direct code.
#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "hermgeo/types.hpp"

namespace hermgeo {

class CMat {
public:
    CMat() = default;
    explicit CMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    static CMat identity(int n) {
        CMat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int size() const { return n_; }

    cxd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const cxd& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    CMat& operator+=(const CMat& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    CMat& operator*=(cxd s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend CMat operator+(CMat x, const CMat& y) { return x += y; }
    friend CMat operator-(CMat x, const CMat& y) { return x -= y; }
    friend CMat operator*(CMat x, cxd s) { return x *= s; }
    friend CMat operator*(cxd s, CMat x) { return x *= s; }

    CMat transpose() const {
        CMat m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m(i, j) = (*this)(j, i);
        return m;
    }

    CMat conjugate() const {
        CMat m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m(i, j) = std::conj((*this)(i, j));
        return m;
    }

    CMat conj_transpose() const { return transpose().conjugate(); }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_hermitian(double tol) const {
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

private:
    int n_ = 0;
    std::vector<cxd> a_;
};

inline CMat mat_mul(const CMat& x, const CMat& y) {
    const int n = x.size();
    CMat r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cxd xik = x(i, k);
            if (xik == cxd{}) continue;
            for (int j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

inline double max_abs_diff(const CMat& x, const CMat& y) { return (x - y).max_abs(); }

namespace detail {

// In-place LU with partial pivoting.  Returns the pivot sign, fills 'piv',
// throws DegenerateMetricError on a (numerically) singular matrix.
inline int lu_factor(CMat& m, std::vector<int>& piv) {
    const int n = m.size();
    piv.resize(n);
    int sign = 1;
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int c = 0; c < n; ++c) {
        int best = c;
        double bestmag = std::abs(m(c, c));
        for (int r = c + 1; r < n; ++r) {
            const double mag = std::abs(m(r, c));
            if (mag > bestmag) { best = r; bestmag = mag; }
        }
        if (bestmag < 1e-300)
            throw DegenerateMetricError("matrix is singular to working precision");
        if (best != c) {
            for (int j = 0; j < n; ++j) std::swap(m(c, j), m(best, j));
            std::swap(piv[c], piv[best]);
            sign = -sign;
        }
        for (int r = c + 1; r < n; ++r) {
            const cxd f = m(r, c) / m(c, c);
            m(r, c) = f;
            for (int j = c + 1; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return sign;
}

}  // namespace detail

inline cxd determinant(CMat m) {
    std::vector<int> piv;
    const int sign = detail::lu_factor(m, piv);
    cxd det = static_cast<double>(sign);
    for (int i = 0; i < m.size(); ++i) det *= m(i, i);
    return det;
}

// Plain matrix inverse via LU: result * m == identity.
inline CMat lu_inverse(const CMat& m) {
    const int n = m.size();
    CMat lu = m;
    std::vector<int> piv;
    detail::lu_factor(lu, piv);
    CMat inv(n);
    std::vector<cxd> col(n);
    for (int rhs = 0; rhs < n; ++rhs) {
        for (int i = 0; i < n; ++i) col[i] = (piv[i] == rhs) ? 1.0 : 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) col[i] -= lu(i, j) * col[j];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) col[i] -= lu(i, j) * col[j];
            col[i] /= lu(i, i);
        }
        for (int i = 0; i < n; ++i) inv(i, rhs) = col[i];
    }
    return inv;
}

// Cholesky attempt on a Hermitian matrix; succeeds iff positive definite.
inline bool cholesky_positive_definite(const CMat& m) {
    const int n = m.size();
    CMat l(n);
    for (int j = 0; j < n; ++j) {
        cxd acc = m(j, j);
        for (int k = 0; k < j; ++k) acc -= l(j, k) * std::conj(l(j, k));
        const double d = acc.real();
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double root = std::sqrt(d);
        l(j, j) = root;
        for (int i = j + 1; i < n; ++i) {
            cxd s = m(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / root;
        }
    }
    return true;
}

// Index-lowered inverse of a Hermitian positive definite metric matrix
// g(i,j) = g_{i jbar}.  The result G is the one the contraction formulas
// expect: sum_q G(i,q) * g(k,q) = delta_{ik}, i.e. the transpose (equivalently
// entrywise conjugate) of the plain inverse.  Throws DegenerateMetricError
// when the Cholesky probe fails.
inline CMat invert_metric(const CMat& g, const std::string& where = "") {
    if (!cholesky_positive_definite(g))
        throw DegenerateMetricError("metric degenerate" + (where.empty() ? "" : " at " + where));
    return lu_inverse(g).transpose();
}

}  // namespace hermgeo
