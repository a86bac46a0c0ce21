// Finite-difference Wirtinger derivatives.  Metric entries are functions of
// (z, zbar), not holomorphic functions of z, so complex-step differentiation
// does not apply; everything here is 2nd-order central differencing on the
// underlying real coordinates:
//   d/dz^i    = (d/dx_i - i d/dy_i) / 2
//   d/dzbar^i = (d/dx_i + i d/dy_i) / 2
// Mixed second derivatives are nested first differences (outer antiholomorphic
// over inner holomorphic), still O(step^2) for C^3 fields.
//
// The engine is generic over the field's value type: anything with value
// subtraction/addition and scaling by a complex number (cxd, CMat, and the
// form containers all qualify).
#pragma once

#include "hermgeo/chart.hpp"
#include "hermgeo/types.hpp"

namespace hermgeo {

enum class WirtingerKind { Holomorphic, Antiholomorphic };

template <class Field>
auto wirtinger_derivative(const Field& f, const ChartPoint& p, int index,
                          WirtingerKind kind, double step) {
    if (!(step > 0.0)) throw Error("wirtinger_derivative: step must be positive");
    const int xk = 2 * index;
    const int yk = 2 * index + 1;
    auto dx = f(p.displaced(xk, step)) - f(p.displaced(xk, -step));
    auto dy = f(p.displaced(yk, step)) - f(p.displaced(yk, -step));
    const double q = 0.25 / step;  // central difference 1/(2h) times Wirtinger 1/2
    const cxd iq = (kind == WirtingerKind::Holomorphic) ? cxd(0.0, -q) : cxd(0.0, q);
    return dx * cxd(q, 0.0) + dy * iq;
}

// d^2 f / dz^i dzbar^j.
template <class Field>
auto wirtinger_mixed(const Field& f, const ChartPoint& p, int i, int j, double step) {
    auto inner = [&](const ChartPoint& q) {
        return wirtinger_derivative(f, q, i, WirtingerKind::Holomorphic, step);
    };
    return wirtinger_derivative(inner, p, j, WirtingerKind::Antiholomorphic, step);
}

// d^2 f / dz^i dz^j.
template <class Field>
auto wirtinger_holhol(const Field& f, const ChartPoint& p, int i, int j, double step) {
    auto inner = [&](const ChartPoint& q) {
        return wirtinger_derivative(f, q, i, WirtingerKind::Holomorphic, step);
    };
    return wirtinger_derivative(inner, p, j, WirtingerKind::Holomorphic, step);
}

}  // namespace hermgeo
