// First and mixed second Wirtinger derivatives of a Hermitian matrix field,
// bundled with the value.  Jets come from closed forms (metric zoo) or from
// the FD engine; either way downstream code never differentiates again for
// first/mixed-second data.
#pragma once

#include <functional>
#include <vector>

#include "hermgeo/chart.hpp"
#include "hermgeo/linalg.hpp"
#include "hermgeo/wirtinger.hpp"

namespace hermgeo {

enum class DerivSource { Analytic, FiniteDifference };

struct DerivativeJet {
    CMat value;
    std::vector<CMat> d_hol;      // d_hol[i](a,b)      = d g_{a bbar} / d z^i
    std::vector<CMat> d_antihol;  // d_antihol[j](a,b)  = d g_{a bbar} / d zbar^j
    std::vector<std::vector<CMat>> d_mixed;  // d_mixed[i][j] = d^2 g / dz^i dzbar^j
    bool has_holhol = false;
    std::vector<std::vector<CMat>> d_holhol;  // d_holhol[i][j] = d^2 g / dz^i dz^j
    DerivSource source = DerivSource::Analytic;
    double step = 0.0;

    int dim() const { return value.size(); }

    static DerivativeJet zeroed(int n) {
        DerivativeJet j;
        j.value = CMat(n);
        j.d_hol.assign(n, CMat(n));
        j.d_antihol.assign(n, CMat(n));
        j.d_mixed.assign(n, std::vector<CMat>(n, CMat(n)));
        return j;
    }

    void alloc_holhol() {
        const int n = dim();
        d_holhol.assign(n, std::vector<CMat>(n, CMat(n)));
        has_holhol = true;
    }
};

using MatrixField = std::function<CMat(const ChartPoint&)>;

// Jet by brute finite differences.  d_antihol is differenced directly rather
// than filled in from the Hermitian symmetry of d_hol, so the symmetry stays
// a checkable property of the output.
inline DerivativeJet fd_jet(const MatrixField& field, const ChartPoint& p, double step,
                            bool want_holhol = false) {
    const int n = p.n();
    DerivativeJet jet = DerivativeJet::zeroed(n);
    jet.source = DerivSource::FiniteDifference;
    jet.step = step;
    jet.value = field(p);
    for (int i = 0; i < n; ++i) {
        jet.d_hol[i] = wirtinger_derivative(field, p, i, WirtingerKind::Holomorphic, step);
        jet.d_antihol[i] =
            wirtinger_derivative(field, p, i, WirtingerKind::Antiholomorphic, step);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) jet.d_mixed[i][j] = wirtinger_mixed(field, p, i, j, step);
    if (want_holhol) {
        jet.alloc_holhol();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                jet.d_holhol[i][j] = wirtinger_holhol(field, p, i, j, step);
    }
    return jet;
}

}  // namespace hermgeo
