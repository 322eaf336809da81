#pragma once

/** \file observable.hpp
    The Observable contract: a named scalar function over phase space,
    evaluable in real or dual arithmetic.  Both code paths are instantiated
    from one generic callable, so values agree to rounding and gradients are
    exact forward-mode derivatives.
*/

#include <array>
#include <functional>
#include <string>
#include <utility>

#include "superint/dual.hpp"
#include "superint/phase.hpp"

namespace superint {

using Vec4 = std::array<double, 4>;
using DualVec4 = std::array<Dual, 4>;

constexpr int kNonPolynomial = -1;  // degree_in_momenta marker

struct Observable {
    std::string name;
    Chart chart = Chart::cartesian;
    int degree_in_momenta = kNonPolynomial;
    std::function<double(const Vec4&)> eval_real;
    std::function<Dual(const DualVec4&)> eval_dual;

    double operator()(const PhasePoint& p) const {
        if (p.chart != chart)
            throw ChartMismatch("observable '" + name + "' expects a different chart");
        return eval_real(p.coords());
    }

    Grad4 gradient(const PhasePoint& p) const {
        if (p.chart != chart)
            throw ChartMismatch("observable '" + name + "' expects a different chart");
        return eval_dual(dual_lift(p)).g;
    }

    /// Seeded duals: component k carries value q_k and unit gradient e_k.
    static DualVec4 dual_lift(const PhasePoint& p) {
        p.validate();
        const Vec4 v = p.coords();
        return {Dual::seed(v[0], 0), Dual::seed(v[1], 1), Dual::seed(v[2], 2), Dual::seed(v[3], 3)};
    }
};

/// Build an Observable from one generic callable f(q1,q2,p1,p2) usable with
/// double and Dual arguments.
template <typename F>
Observable make_observable(std::string name, Chart chart, int degree, F f) {
    Observable o;
    o.name = std::move(name);
    o.chart = chart;
    o.degree_in_momenta = degree;
    o.eval_real = [f](const Vec4& v) -> double { return f(v[0], v[1], v[2], v[3]); };
    o.eval_dual = [f](const DualVec4& v) -> Dual { return f(v[0], v[1], v[2], v[3]); };
    return o;
}

inline double evaluate(const Observable& obs, const PhasePoint& p) {
    p.validate();
    return obs(p);
}

inline Grad4 gradient(const Observable& obs, const PhasePoint& p) { return obs.gradient(p); }

/// One-variable differentiable function, type-erased the same way (used by
/// the generic polar-separable constructor).
struct OneVarFn {
    std::function<double(double)> real;
    std::function<Dual(const Dual&)> dual;
};

template <typename F>
OneVarFn make_onevar(F f) {
    return {[f](double x) -> double { return f(x); }, [f](const Dual& x) -> Dual { return f(x); }};
}

inline double call(const OneVarFn& f, double x) { return f.real(x); }
inline Dual call(const OneVarFn& f, const Dual& x) { return f.dual(x); }

inline DualVec4 dual_lift(const PhasePoint& p) { return Observable::dual_lift(p); }

}  // namespace superint
