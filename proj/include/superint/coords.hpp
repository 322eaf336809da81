#pragma once

/** \file coords.hpp
    Canonical transforms between the four charts.  Coordinates map by the
    point transformation, momenta by the cotangent (inverse-transpose
    Jacobian) rule, so every transform preserves {Q_i, P_j} = delta_ij.

    Branch conventions: the parabolic chart (x = a^2 - b^2, y = 2ab) uses the
    a > 0 branch, covering the plane minus the negative x-axis; the rotated
    chart (x = 2*alpha*beta, y = alpha^2 - beta^2) uses alpha > 0, covering
    the plane minus the negative y-axis.
*/

#include <array>

#include "superint/dual.hpp"
#include "superint/observable.hpp"
#include "superint/phase.hpp"

namespace superint {

// ---- generic transforms, usable in double and Dual arithmetic ----

template <class T>
std::array<T, 4> polar_to_cart(const T& r, const T& phi, const T& pr, const T& pphi) {
    auto c = cos(phi), s = sin(phi);
    return {r * c, r * s, c * pr - s * (pphi / r), s * pr + c * (pphi / r)};
}

template <class T>
std::array<T, 4> cart_to_polar(const T& x, const T& y, const T& px, const T& py) {
    auto r = sqrt(x * x + y * y);
    return {r, atan2(y, x), (x * px + y * py) / r, x * py - y * px};
}

template <class T>
std::array<T, 4> parabolic_to_cart(const T& a, const T& b, const T& pa, const T& pb) {
    auto d = 2.0 * (a * a + b * b);
    return {a * a - b * b, 2.0 * a * b, (a * pa - b * pb) / d, (b * pa + a * pb) / d};
}

template <class T>
std::array<T, 4> cart_to_parabolic(const T& x, const T& y, const T& px, const T& py) {
    auto r = sqrt(x * x + y * y);
    auto a = sqrt(0.5 * (r + x));  // singular on the negative x-axis
    auto b = y / (2.0 * a);
    return {a, b, 2.0 * a * px + 2.0 * b * py, -2.0 * b * px + 2.0 * a * py};
}

template <class T>
std::array<T, 4> parabolic_rotated_to_cart(const T& al, const T& be, const T& pal, const T& pbe) {
    auto d = 2.0 * (al * al + be * be);
    return {2.0 * al * be, al * al - be * be, (be * pal + al * pbe) / d, (al * pal - be * pbe) / d};
}

template <class T>
std::array<T, 4> cart_to_parabolic_rotated(const T& x, const T& y, const T& px, const T& py) {
    auto r = sqrt(x * x + y * y);
    auto al = sqrt(0.5 * (r + y));  // singular on the negative y-axis
    auto be = x / (2.0 * al);
    return {al, be, 2.0 * be * px + 2.0 * al * py, 2.0 * al * px - 2.0 * be * py};
}

// ---- PhasePoint-level API ----

/// Canonical transform into the target chart (via the cartesian hub).
PhasePoint to_chart(const PhasePoint& p, Chart target);

/// Transform the point into obs's native chart, then evaluate.
double evaluate_in_chart(const Observable& obs, const PhasePoint& p);

}  // namespace superint
