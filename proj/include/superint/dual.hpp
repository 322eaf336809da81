#pragma once

/** \file dual.hpp
    Forward-mode dual numbers carrying a value and a 4-component gradient
    (d/dq1, d/dq2, d/dp1, d/dp2).  Evaluating a phase-space function on
    seeded duals yields its exact first derivatives; no finite differencing
    is involved anywhere in the bracket machinery.
*/

#include <array>
#include <cmath>

#include "superint/errors.hpp"

namespace superint {

using Grad4 = std::array<double, 4>;

struct Dual {
    double v = 0.0;
    Grad4 g{0.0, 0.0, 0.0, 0.0};

    Dual() = default;
    Dual(double value) : v(value) {}          // constant: zero gradient
    Dual(double value, const Grad4& grad) : v(value), g(grad) {}

    /// Coordinate seed: unit gradient in slot k.
    static Dual seed(double value, int k) {
        Dual d(value);
        d.g[k] = 1.0;
        return d;
    }
};

inline Dual operator+(const Dual& a, const Dual& b) {
    return {a.v + b.v, {a.g[0] + b.g[0], a.g[1] + b.g[1], a.g[2] + b.g[2], a.g[3] + b.g[3]}};
}
inline Dual operator-(const Dual& a, const Dual& b) {
    return {a.v - b.v, {a.g[0] - b.g[0], a.g[1] - b.g[1], a.g[2] - b.g[2], a.g[3] - b.g[3]}};
}
inline Dual operator-(const Dual& a) {
    return {-a.v, {-a.g[0], -a.g[1], -a.g[2], -a.g[3]}};
}
inline Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v,
            {a.g[0] * b.v + a.v * b.g[0], a.g[1] * b.v + a.v * b.g[1],
             a.g[2] * b.v + a.v * b.g[2], a.g[3] * b.v + a.v * b.g[3]}};
}
inline Dual operator/(const Dual& a, const Dual& b) {
    if (b.v == 0.0) throw DerivativeSingular("dual division by zero");
    const double inv = 1.0 / b.v;
    const double q = a.v * inv;
    return {q, {(a.g[0] - q * b.g[0]) * inv, (a.g[1] - q * b.g[1]) * inv,
                (a.g[2] - q * b.g[2]) * inv, (a.g[3] - q * b.g[3]) * inv}};
}

inline Dual operator+(const Dual& a, double b) { return {a.v + b, a.g}; }
inline Dual operator+(double a, const Dual& b) { return {a + b.v, b.g}; }
inline Dual operator-(const Dual& a, double b) { return {a.v - b, a.g}; }
inline Dual operator-(double a, const Dual& b) { return -(b - a); }
inline Dual operator*(const Dual& a, double b) {
    return {a.v * b, {a.g[0] * b, a.g[1] * b, a.g[2] * b, a.g[3] * b}};
}
inline Dual operator*(double a, const Dual& b) { return b * a; }
inline Dual operator/(const Dual& a, double b) {
    if (b == 0.0) throw DerivativeSingular("dual division by zero");
    return a * (1.0 / b);
}
inline Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

// chained value + scaled gradient; every unary function below is this pattern
inline Dual chain(double value, double dvalue, const Dual& x) {
    return {value, {dvalue * x.g[0], dvalue * x.g[1], dvalue * x.g[2], dvalue * x.g[3]}};
}

inline Dual sqrt(const Dual& x) {
    if (x.v < 0.0) throw DomainViolation("sqrt of negative dual");
    if (x.v == 0.0) throw DerivativeSingular("sqrt at zero: derivative singular");
    const double s = std::sqrt(x.v);
    return chain(s, 0.5 / s, x);
}
inline Dual sin(const Dual& x) { return chain(std::sin(x.v), std::cos(x.v), x); }
inline Dual cos(const Dual& x) { return chain(std::cos(x.v), -std::sin(x.v), x); }
inline Dual tan(const Dual& x) {
    const double c = std::cos(x.v);
    if (c == 0.0) throw DerivativeSingular("tan at pole");
    return chain(std::tan(x.v), 1.0 / (c * c), x);
}
inline Dual exp(const Dual& x) {
    const double e = std::exp(x.v);
    return chain(e, e, x);
}
inline Dual log(const Dual& x) {
    if (x.v <= 0.0) throw DomainViolation("log of non-positive dual");
    return chain(std::log(x.v), 1.0 / x.v, x);
}
inline Dual abs(const Dual& x) {
    if (x.v == 0.0) throw DerivativeSingular("abs at zero: derivative singular");
    return x.v > 0.0 ? x : -x;
}
inline Dual atan2(const Dual& y, const Dual& x) {
    const double d = x.v * x.v + y.v * y.v;
    if (d == 0.0) throw DerivativeSingular("atan2 at origin");
    Dual r;
    r.v = std::atan2(y.v, x.v);
    for (int k = 0; k < 4; ++k) r.g[k] = (x.v * y.g[k] - y.v * x.g[k]) / d;
    return r;
}

/// Integer power by repeated squaring (valid at zero base, unlike pow).
inline Dual powi(Dual x, int n) {
    if (n < 0) return 1.0 / powi(x, -n);
    Dual r(1.0);
    while (n > 0) {
        if (n & 1) r = r * x;
        x = x * x;
        n >>= 1;
    }
    return r;
}
inline Dual pow(const Dual& x, double p) {
    if (x.v <= 0.0) throw DomainViolation("pow of non-positive dual base");
    const double f = std::pow(x.v, p);
    return chain(f, p * f / x.v, x);
}

// Pull the std scalar functions into this namespace so that generic lambdas
// written against unqualified sqrt/sin/... resolve for double and Dual alike.
using std::abs;
using std::atan2;
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

// double fallbacks so generic phase-space lambdas compile in real arithmetic
inline double chain(double v, double, double) { return v; }
inline double powi(double x, int n) {
    if (n < 0) return 1.0 / powi(x, -n);
    double r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}
inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

}  // namespace superint
