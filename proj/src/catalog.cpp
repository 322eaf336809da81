#include "superint/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "superint/coords.hpp"
#include "superint/factorization.hpp"

namespace superint {

const Observable& SystemDef::integral(const std::string& name) const {
    for (const auto& o : integrals)
        if (o.name == name) return o;
    throw UnknownSystem("system '" + id + "' has no integral named '" + name + "'");
}

bool SystemDef::has_integral(const std::string& name) const {
    return std::any_of(integrals.begin(), integrals.end(),
                       [&](const Observable& o) { return o.name == name; });
}

namespace {

// Domain guard usable inside generic observable lambdas.
template <class T>
T guard_pos(T v, const char* what) {
    if (value_of(v) <= 0.0) throw DomainViolation(what);
    return v;
}

// k/den with an exact (type-preserving) zero when the coupling is zero, so
// systems with a switched-off barrier stay regular on the axis.
template <class T>
T barrier(double k, const T& den) {
    if (k == 0.0) return den * 0.0;
    return k / den;
}
template <class T>
T barrier_frac(double k, const T& num, const T& den) {
    if (k == 0.0) return den * 0.0;
    return k * num / den;
}

// ---------------------------------------------------------------- euclid_a
// H_a = (px^2+py^2)/2 + alpha^2 r^2/2 + k2/x^2 + k3/y^2
auto ham_euclid_a(const ParamSet& ps) {
    const double a2 = sq(ps.alpha), k2 = ps.k2, k3 = ps.k3;
    return [=](auto x, auto y, auto px, auto py) {
        return 0.5 * (px * px + py * py) + 0.5 * a2 * (x * x + y * y) + barrier(k2, x * x) +
               barrier(k3, y * y);
    };
}

// ---------------------------------------------------------------- def_a
// H~_a = H_a / (1 - kappa r^2)
auto ham_def_a(const ParamSet& ps) {
    const double a2 = sq(ps.alpha), k2 = ps.k2, k3 = ps.k3, kap = ps.kappa;
    return [=](auto x, auto y, auto px, auto py) {
        auto r2 = x * x + y * y;
        auto mu = guard_pos(1.0 - kap * r2, "1 - kappa r^2 <= 0");
        return (0.5 * (px * px + py * py) + 0.5 * a2 * r2 + barrier(k2, x * x) +
                barrier(k3, y * y)) / mu;
    };
}

// ---------------------------------------------------------------- euclid_b
// H_b = (px^2+py^2)/2 + alpha^2 (4x^2+y^2)/2 + k2/y^2 + k3 x
auto ham_euclid_b(const ParamSet& ps) {
    const double a2 = sq(ps.alpha), k2 = ps.k2, k3 = ps.k3;
    return [=](auto x, auto y, auto px, auto py) {
        return 0.5 * (px * px + py * py) + 0.5 * a2 * (4.0 * x * x + y * y) +
               barrier(k2, y * y) + k3 * x;
    };
}

auto ham_def_b(const ParamSet& ps) {
    const double a2 = sq(ps.alpha), k2 = ps.k2, k3 = ps.k3, kap = ps.kappa;
    return [=](auto x, auto y, auto px, auto py) {
        auto mu = guard_pos(1.0 - kap * x, "1 - kappa x <= 0");
        return (0.5 * (px * px + py * py) + 0.5 * a2 * (4.0 * x * x + y * y) +
                barrier(k2, y * y) + k3 * x) / mu;
    };
}

// ---------------------------------------------------------------- euclid_c
// H_c = (px^2+py^2)/2 + k1/r + k2/y^2 + k3 x/(y^2 r)
auto ham_euclid_c(const ParamSet& ps) {
    const double k1 = ps.k1, k2 = ps.k2, k3 = ps.k3;
    return [=](auto x, auto y, auto px, auto py) {
        auto r = sqrt(x * x + y * y);
        return 0.5 * (px * px + py * py) + k1 / r + barrier(k2, y * y) +
               barrier_frac(k3, x, y * y * r);
    };
}

// H~_c = lambda_c H_c, lambda_c = r/(r-kappa)  (product form)
auto ham_def_c(const ParamSet& ps) {
    const double k1 = ps.k1, k2 = ps.k2, k3 = ps.k3, kap = ps.kappa;
    return [=](auto x, auto y, auto px, auto py) {
        auto r = sqrt(x * x + y * y);
        auto s = guard_pos(r - kap, "r - kappa <= 0");
        return (0.5 * (px * px + py * py) * r + k1 + barrier_frac(k2, r, y * y) +
                barrier_frac(k3, x, y * y)) / s;
    };
}

// ---------------------------------------------------------------- euclid_d
// H_d = (px^2+py^2)/2 + k1/r + k2 sqrt(r+x)/r + k3 sqrt(r-x)/r
auto ham_euclid_d(const ParamSet& ps) {
    const double k1 = ps.k1, k2 = ps.k2, k3 = ps.k3;
    return [=](auto x, auto y, auto px, auto py) {
        auto r = sqrt(x * x + y * y);
        auto res = 0.5 * (px * px + py * py) + k1 / r;
        if (k2 != 0.0) res = res + k2 * sqrt(r + x) / r;
        if (k3 != 0.0) res = res + k3 * sqrt(r - x) / r;
        return res;
    };
}

auto ham_def_d(const ParamSet& ps) {
    const double k1 = ps.k1, k2 = ps.k2, k3 = ps.k3, kap = ps.kappa;
    return [=](auto x, auto y, auto px, auto py) {
        auto r = sqrt(x * x + y * y);
        auto s = guard_pos(r - kap, "r - kappa <= 0");
        auto res = 0.5 * (px * px + py * py) * r + k1 + s * 0.0;
        if (k2 != 0.0) res = res + k2 * sqrt(r + x);
        if (k3 != 0.0) res = res + k3 * sqrt(r - x);
        return res / s;
    };
}

// Runge-Lenz-type combinations shared by def_d and curved_kepler_k2
// (k2 = k3 = 0, k1 = -g recovers the pure Kepler pair J2, J3).
template <class T>
T jd2_expr(double kap, double k1, double k2, double k3, T x, T y, T px, T py) {
    auto r = sqrt(x * x + y * y);
    auto s = guard_pos(r - kap, "r - kappa <= 0");
    auto L = x * py - y * px;
    auto res = r * L * py + 0.5 * kap * (x * px * px - x * py * py + 2.0 * y * px * py) + k1 * x;
    if (k2 != 0.0) res = res - k2 * (y * sqrt(r - x) - kap * sqrt(r + x));
    if (k3 != 0.0) res = res + k3 * (y * sqrt(r + x) - kap * sqrt(r - x));
    return res / s;
}

template <class T>
T jd3_expr(double kap, double k1, double k2, double k3, T x, T y, T px, T py) {
    auto r = sqrt(x * x + y * y);
    auto s = guard_pos(r - kap, "r - kappa <= 0");
    auto L = x * py - y * px;
    auto res = r * L * px + 0.5 * kap * (y * px * px - y * py * py - 2.0 * x * px * py) - k1 * y;
    if (k2 != 0.0) res = res - k2 * (x + kap) * sqrt(r - x);
    if (k3 != 0.0) res = res + k3 * (x - kap) * sqrt(r + x);
    return res / s;
}

// ---------------------------------------------------------------- domains

// oscillator-type disc: r^2 <= 1/kappa - margin when kappa > 0
bool inside_disc(double x, double y, double kap, double margin) {
    if (kap <= 0) return true;
    return x * x + y * y <= 1.0 / kap - margin;
}

// Kepler-type region: r >= kappa + margin (and r >= margin)
bool outside_core(double x, double y, double kap, double margin) {
    const double r = std::hypot(x, y);
    return r >= std::max(kap, 0.0) + std::max(margin, 1e-12);
}

SampleBox default_box(double half) {
    SampleBox b;
    b.q1_min = -half; b.q1_max = half;
    b.q2_min = -half; b.q2_max = half;
    return b;
}

}  // namespace

SystemDef generic_polar_system(const OneVarFn& A, const OneVarFn& B, double kappa, double alpha) {
    SystemDef sys;
    sys.id = "generic_polar";
    sys.description = "generic polar-separable H with radial A(r), angular B(phi)";
    sys.chart = Chart::polar;
    sys.params.kappa = kappa;
    sys.params.alpha = alpha;
    const double kap = kappa, al2 = sq(alpha);
    sys.hamiltonian = make_observable("H", Chart::polar, 2, [A, B, kap, al2](auto r, auto phi, auto pr, auto pph) {
        auto mu = guard_pos(1.0 - kap * r * r, "1 - kappa r^2 <= 0");
        return 0.5 * (pr * pr + (pph * pph) / (r * r) + al2 * call(A, r) + call(B, phi) / (r * r)) / mu;
    });
    sys.integrals.push_back(sys.hamiltonian);
    sys.integrals.push_back(make_observable("J", Chart::polar, 2, [B](auto, auto phi, auto, auto pph) {
        return pph * pph + call(B, phi);
    }));
    sys.rank_triple = {"H", "J"};
    sys.box.q1_min = 0.3;
    sys.box.q1_max = kap > 0 ? std::min(1.4, 0.95 / std::sqrt(kap)) : 1.4;
    sys.box.q2_min = 0.1;
    sys.box.q2_max = 1.4;
    sys.domain_margin = [kap](const PhasePoint& p, double margin) {
        return p.q1 >= std::max(margin, 1e-12) &&
               (kap <= 0 || p.q1 * p.q1 <= 1.0 / kap - margin);
    };
    return sys;
}

namespace {

// ------------------------------------------------ catalog builders

SystemDef base_system(const std::string& id, const std::string& descr, Chart chart,
                      const ParamSet& ps) {
    SystemDef sys;
    sys.id = id;
    sys.description = descr;
    sys.chart = chart;
    sys.params = ps;
    return sys;
}

SystemDef make_euclid_a(const ParamSet& ps) {
    auto sys = base_system("euclid_a", "flat anisotropic-barrier oscillator (Cartesian/polar separable)",
                           Chart::cartesian, ps);
    sys.param_names = {"alpha", "k2", "k3"};
    const double a2 = sq(ps.alpha), k2 = ps.k2, k3 = ps.k3;
    auto h = ham_euclid_a(ps);
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, h);
    sys.integrals.push_back(make_observable("Ia1", Chart::cartesian, 2, [=](auto x, auto, auto px, auto) {
        return px * px + a2 * x * x + barrier(2.0 * k2, x * x);
    }));
    sys.integrals.push_back(make_observable("Ia2", Chart::cartesian, 2, [=](auto, auto y, auto, auto py) {
        return py * py + a2 * y * y + barrier(2.0 * k3, y * y);
    }));
    sys.integrals.push_back(make_observable("Ia3", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        return L * L + barrier_frac(2.0 * k2, y * y, x * x) + barrier_frac(2.0 * k3, x * x, y * y);
    }));
    sys.involutive_pairs = {{"Ia1", "Ia2"}};
    sys.rank_triple = {"Ia1", "Ia2", "Ia3"};
    sys.box = default_box(1.5);
    sys.domain_margin = [k2, k3](const PhasePoint& p, double m) {
        return (k2 == 0.0 || std::fabs(p.q1) >= m) && (k3 == 0.0 || std::fabs(p.q2) >= m);
    };
    return sys;
}

SystemDef make_def_a(const ParamSet& ps, const std::string& id = "def_a") {
    auto sys = base_system(id, "curved-space anisotropic-barrier oscillator (kappa-deformed)",
                           Chart::cartesian, ps);
    sys.param_names = {"kappa", "alpha", "k2", "k3"};
    const double a2 = sq(ps.alpha), k2 = ps.k2, k3 = ps.k3, kap = ps.kappa;
    auto h = ham_def_a(ps);
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, h);
    // separation forms: J = (flat one-dimensional invariant) + 2 kappa q^2 H
    sys.integrals.push_back(make_observable("Ja1", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        return px * px + a2 * x * x + barrier(2.0 * k2, x * x) +
               2.0 * kap * x * x * h(x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("Ja2", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        return py * py + a2 * y * y + barrier(2.0 * k3, y * y) +
               2.0 * kap * y * y * h(x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("Ja3", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        return L * L + barrier_frac(2.0 * k2, y * y, x * x) + barrier_frac(2.0 * k3, x * x, y * y);
    }));
    sys.involutive_pairs = {{"Ja1", "Ja2"}};
    sys.rank_triple = {"Ja1", "Ja2", "Ja3"};
    sys.euclidean_limit_id = "euclid_a";
    const double half = kap > 0 ? std::sqrt(1.0 / kap) : 1.5;
    sys.box = default_box(std::min(1.5, half));
    sys.domain_margin = [kap, k2, k3](const PhasePoint& p, double m) {
        return (k2 == 0.0 || std::fabs(p.q1) >= m) && (k3 == 0.0 || std::fabs(p.q2) >= m) &&
               inside_disc(p.q1, p.q2, kap, m);
    };
    return sys;
}

SystemDef make_euclid_b(const ParamSet& ps) {
    auto sys = base_system("euclid_b", "flat 2:1 oscillator with barrier and linear tilt",
                           Chart::cartesian, ps);
    sys.param_names = {"alpha", "k2", "k3"};
    const double a2 = sq(ps.alpha), k2 = ps.k2, k3 = ps.k3;
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, ham_euclid_b(ps));
    sys.integrals.push_back(make_observable("Ib1", Chart::cartesian, 2, [=](auto x, auto, auto px, auto) {
        return px * px + 4.0 * a2 * x * x + 2.0 * k3 * x;
    }));
    sys.integrals.push_back(make_observable("Ib2", Chart::cartesian, 2, [=](auto, auto y, auto, auto py) {
        return py * py + a2 * y * y + barrier(2.0 * k2, y * y);
    }));
    sys.integrals.push_back(make_observable("Ib3", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        return L * py - a2 * x * y * y + barrier_frac(2.0 * k2, x, y * y) - 0.5 * k3 * y * y;
    }));
    sys.involutive_pairs = {{"Ib1", "Ib2"}};
    sys.rank_triple = {"Ib1", "Ib2", "Ib3"};
    sys.box = default_box(1.5);
    sys.domain_margin = [k2](const PhasePoint& p, double m) {
        return k2 == 0.0 || std::fabs(p.q2) >= m;
    };
    return sys;
}

SystemDef make_def_b(const ParamSet& ps) {
    auto sys = base_system("def_b", "deformed 2:1 oscillator (parabolic separable)",
                           Chart::cartesian, ps);
    sys.param_names = {"kappa", "alpha", "k2", "k3"};
    const double a2 = sq(ps.alpha), k2 = ps.k2, k3 = ps.k3, kap = ps.kappa;
    auto h = ham_def_b(ps);
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, h);
    sys.integrals.push_back(make_observable("Jb1", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        return px * px + 4.0 * a2 * x * x + 2.0 * k3 * x + 2.0 * kap * x * h(x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("Jb2", Chart::cartesian, 2, [=](auto, auto y, auto, auto py) {
        return py * py + a2 * y * y + barrier(2.0 * k2, y * y);
    }));
    sys.integrals.push_back(make_observable("Jb3", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        auto mu = guard_pos(1.0 - kap * x, "1 - kappa x <= 0");
        return L * py - 0.25 * kap * y * y * (px * px + py * py) / mu +
               (-0.25 * a2 * y * y * (4.0 * x + kap * y * y) +
                barrier_frac(0.5 * k2, 4.0 * x - kap * (4.0 * x * x + y * y), y * y) -
                0.5 * k3 * y * y) / mu;
    }));
    sys.involutive_pairs = {{"Jb1", "Jb2"}};
    sys.rank_triple = {"Jb1", "Jb2", "Jb3"};
    sys.euclidean_limit_id = "euclid_b";
    sys.box = default_box(1.5);
    if (kap > 0) sys.box.q1_max = std::min(1.5, 0.95 / kap);
    sys.domain_margin = [kap, k2](const PhasePoint& p, double m) {
        if (k2 != 0.0 && std::fabs(p.q2) < m) return false;
        if (kap > 0) return p.q1 <= 1.0 / kap - m;
        if (kap < 0) return p.q1 >= 1.0 / kap + m;
        return true;
    };
    return sys;
}

SystemDef make_euclid_c(const ParamSet& ps) {
    auto sys = base_system("euclid_c", "flat Kepler-type potential with angular barrier",
                           Chart::cartesian, ps);
    sys.param_names = {"k1", "k2", "k3"};
    const double k1 = ps.k1, k2 = ps.k2, k3 = ps.k3;
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, ham_euclid_c(ps));
    sys.integrals.push_back(sys.hamiltonian);
    sys.integrals.push_back(make_observable("Ic2", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        auto r = sqrt(x * x + y * y);
        return L * L + barrier_frac(2.0 * k2, x * x, y * y) + barrier_frac(2.0 * k3, x * r, y * y);
    }));
    sys.integrals.push_back(make_observable("Ic3", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        auto r = sqrt(x * x + y * y);
        return L * py + k1 * x / r + barrier_frac(2.0 * k2, x, y * y) +
               barrier_frac(k3, 2.0 * x * x + y * y, y * y * r);
    }));
    sys.rank_triple = {"H", "Ic2", "Ic3"};
    sys.box = default_box(1.5);
    sys.domain_margin = [k2, k3](const PhasePoint& p, double m) {
        if ((k2 != 0.0 || k3 != 0.0) && std::fabs(p.q2) < m) return false;
        return std::hypot(p.q1, p.q2) >= std::max(m, 1e-12);
    };
    return sys;
}

SystemDef make_def_c(const ParamSet& ps) {
    auto sys = base_system("def_c", "curved Kepler-type system (polar/parabolic separable)",
                           Chart::cartesian, ps);
    sys.param_names = {"kappa", "k1", "k2", "k3"};
    const double k1 = ps.k1, k2 = ps.k2, k3 = ps.k3, kap = ps.kappa;
    auto h = ham_def_c(ps);
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, h);
    sys.integrals.push_back(sys.hamiltonian);
    // Jc2 is kappa-independent and coincides with Ic2
    sys.integrals.push_back(make_observable("Jc2", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        auto r = sqrt(x * x + y * y);
        return L * L + barrier_frac(2.0 * k2, x * x, y * y) + barrier_frac(2.0 * k3, x * r, y * y);
    }));
    sys.integrals.push_back(make_observable("Jc3", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        auto r = sqrt(x * x + y * y);
        auto s = guard_pos(r - kap, "r - kappa <= 0");
        return (r * L * py + 0.5 * kap * (x * px * px - x * py * py + 2.0 * y * px * py) + k1 * x +
                barrier_frac(k2, x * (2.0 * r - kap), y * y) +
                barrier_frac(k3, 2.0 * x * x + y * y - kap * r, y * y)) / s;
    }));
    // separation constants of the parabolic chart, normalized so that
    // Jc3 = Jc3a + kappa H = Jc3b - kappa H and both tend to Ic3 as kappa -> 0
    sys.integrals.push_back(make_observable("Jc3a", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto P = cart_to_parabolic(x, y, px, py);
        auto b = P[1], pb = P[3];
        return 0.25 * pb * pb + k1 + barrier(0.5 * (k2 + k3), b * b) -
               2.0 * b * b * h(x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("Jc3b", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto P = cart_to_parabolic(x, y, px, py);
        auto a = P[0], pa = P[2];
        return -(0.25 * pa * pa + k1 + barrier(0.5 * (k2 - k3), a * a) -
                 2.0 * a * a * h(x, y, px, py));
    }));
    sys.involutive_pairs = {{"Jc3a", "Jc3b"}};
    sys.rank_triple = {"H", "Jc2", "Jc3"};
    sys.euclidean_limit_id = "euclid_c";
    sys.box = default_box(1.5);
    sys.domain_margin = [kap, k2, k3](const PhasePoint& p, double m) {
        if ((k2 != 0.0 || k3 != 0.0) && std::fabs(p.q2) < m) return false;
        return outside_core(p.q1, p.q2, kap, m);
    };
    return sys;
}

SystemDef make_euclid_d(const ParamSet& ps) {
    auto sys = base_system("euclid_d", "flat Kepler-type potential, doubly parabolic separable",
                           Chart::cartesian, ps);
    sys.param_names = {"k1", "k2", "k3"};
    const double k1 = ps.k1, k2 = ps.k2, k3 = ps.k3;
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, ham_euclid_d(ps));
    sys.integrals.push_back(sys.hamiltonian);
    sys.integrals.push_back(make_observable("Id2", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        return jd2_expr(0.0, k1, k2, k3, x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("Id3", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        return jd3_expr(0.0, k1, k2, k3, x, y, px, py);
    }));
    sys.rank_triple = {"H", "Id2", "Id3"};
    sys.box = default_box(1.5);
    sys.box.q2_min = 0.05;  // upper half-plane, matching def_d
    sys.domain_margin = [](const PhasePoint& p, double m) {
        return p.q2 >= m && std::hypot(p.q1, p.q2) >= std::max(m, 1e-12);
    };
    return sys;
}

SystemDef make_def_d(const ParamSet& ps) {
    auto sys = base_system("def_d", "curved Kepler-type system, two parabolic charts",
                           Chart::cartesian, ps);
    sys.param_names = {"kappa", "k1", "k2", "k3"};
    const double k1 = ps.k1, k2 = ps.k2, k3 = ps.k3, kap = ps.kappa;
    auto h = ham_def_d(ps);
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, h);
    sys.integrals.push_back(sys.hamiltonian);
    sys.integrals.push_back(make_observable("Jd2", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        return jd2_expr(kap, k1, k2, k3, x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("Jd3", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        return jd3_expr(kap, k1, k2, k3, x, y, px, py);
    }));
    // parabolic separation constants; Jd2 = Jd2a + kappa H = Jd2b - kappa H
    const double s2 = std::sqrt(2.0);
    sys.integrals.push_back(make_observable("Jd2a", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto P = cart_to_parabolic(x, y, px, py);
        auto pb = P[3];
        auto absb = sqrt(0.5 * (sqrt(x * x + y * y) - x));
        return 0.25 * pb * pb + k1 + 2.0 * s2 * k3 * absb -
               2.0 * absb * absb * h(x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("Jd2b", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto P = cart_to_parabolic(x, y, px, py);
        auto a = P[0], pa = P[2];
        return -(0.25 * pa * pa + k1 + 2.0 * s2 * k2 * a - 2.0 * a * a * h(x, y, px, py));
    }));
    // rotated-chart separation constants (upper half-plane branch);
    // Jd3 = Jd3a + kappa H = Jd3b - kappa H
    sys.integrals.push_back(make_observable("Jd3a", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto P = cart_to_parabolic_rotated(x, y, px, py);
        auto al = P[0], pal = P[2];
        return 0.25 * pal * pal + k1 + 2.0 * (k2 + k3) * al - 2.0 * al * al * h(x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("Jd3b", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto P = cart_to_parabolic_rotated(x, y, px, py);
        auto be = P[1], pbe = P[3];
        return -(0.25 * pbe * pbe + k1 + 2.0 * (k2 - k3) * be - 2.0 * be * be * h(x, y, px, py));
    }));
    sys.involutive_pairs = {{"Jd2a", "Jd2b"}, {"Jd3a", "Jd3b"}};
    sys.rank_triple = {"H", "Jd2", "Jd3"};
    sys.euclidean_limit_id = "euclid_d";
    sys.box = default_box(1.5);
    sys.box.q2_min = 0.05;  // rotated-chart separation constants live on y > 0
    sys.domain_margin = [kap](const PhasePoint& p, double m) {
        return p.q2 >= m && outside_core(p.q1, p.q2, kap, m);
    };
    return sys;
}

// ---------------------------------------------------------------- 1-D oscillators
// Realized on the 4-D phase space with inert (q2, p2).
SystemDef make_osc1d(const ParamSet& ps, bool variant2) {
    auto sys = base_system(variant2 ? "osc1d_h2" : "osc1d_h1",
                           variant2 ? "1-D nonlinear oscillator, conformal kinetic term"
                                    : "1-D nonlinear oscillator, position-dependent mass",
                           Chart::cartesian, ps);
    sys.param_names = {"kappa", "alpha"};
    const double a2 = sq(ps.alpha), kap = ps.kappa;
    if (variant2)
        sys.hamiltonian = make_observable("H", Chart::cartesian, 2, [=](auto x, auto, auto px, auto) {
            auto mu = guard_pos(1.0 - kap * x * x, "1 - kappa x^2 <= 0");
            return 0.5 * (px * px + a2 * x * x) / mu;
        });
    else
        sys.hamiltonian = make_observable("H", Chart::cartesian, 2, [=](auto x, auto, auto px, auto) {
            auto mu = guard_pos(1.0 - kap * x * x, "1 - kappa x^2 <= 0");
            return 0.5 * mu * px * px + 0.5 * a2 * x * x / mu;
        });
    sys.integrals.push_back(sys.hamiltonian);
    sys.rank_triple = {"H"};
    sys.box = default_box(1.5);
    if (kap > 0) {
        const double hw = std::sqrt(std::max(1.0 / kap - 0.05, 0.01));
        sys.box.q1_min = -std::min(1.5, hw);
        sys.box.q1_max = std::min(1.5, hw);
    }
    sys.domain_margin = [kap](const PhasePoint& p, double m) {
        return kap <= 0 || p.q1 * p.q1 <= 1.0 / kap - m;
    };
    return sys;
}

// ---------------------------------------------------------------- curved oscillators
SystemDef make_curved_osc_h1(const ParamSet& ps) {
    auto sys = base_system("curved_osc_h1", "harmonic oscillator on the constant-curvature space",
                           Chart::cartesian, ps);
    sys.param_names = {"kappa", "alpha"};
    const double a2 = sq(ps.alpha), kap = ps.kappa;
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto r2 = x * x + y * y;
        auto mu = guard_pos(1.0 - kap * r2, "1 - kappa r^2 <= 0");
        auto L = x * py - y * px;
        return 0.5 * (mu * (px * px + py * py) + kap * L * L) + 0.5 * a2 * r2 / mu;
    });
    sys.integrals.push_back(sys.hamiltonian);
    // curved Fradkin-tensor diagonal components + angular momentum
    sys.integrals.push_back(make_observable("Fxx", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto) {
        auto mu = guard_pos(1.0 - kap * (x * x + y * y), "1 - kappa r^2 <= 0");
        return mu * px * px + a2 * x * x / mu;
    }));
    sys.integrals.push_back(make_observable("Fyy", Chart::cartesian, 2, [=](auto x, auto y, auto, auto py) {
        auto mu = guard_pos(1.0 - kap * (x * x + y * y), "1 - kappa r^2 <= 0");
        return mu * py * py + a2 * y * y / mu;
    }));
    sys.integrals.push_back(make_observable("Lsq", Chart::cartesian, 2, [](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        return L * L;
    }));
    sys.rank_triple = {"Fxx", "Fyy", "Lsq"};
    sys.euclidean_limit_id = "euclid_a";
    const double half = kap > 0 ? std::sqrt(1.0 / kap) : 1.5;
    sys.box = default_box(std::min(1.5, half));
    sys.domain_margin = [kap](const PhasePoint& p, double m) {
        return inside_disc(p.q1, p.q2, kap, m);
    };
    return sys;
}

// ---------------------------------------------------------------- curved Kepler
SystemDef make_curved_kepler_k1(const ParamSet& ps) {
    auto sys = base_system("curved_kepler_k1", "Kepler problem on the constant-curvature space",
                           Chart::cartesian, ps);
    sys.param_names = {"kappa", "g"};
    const double g = ps.g, kap = ps.kappa;
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto r2 = x * x + y * y;
        auto mu = guard_pos(1.0 - kap * r2, "1 - kappa r^2 <= 0");
        auto L = x * py - y * px;
        return 0.5 * (mu * (px * px + py * py) + kap * L * L) - g * sqrt(mu) / sqrt(r2);
    });
    sys.integrals.push_back(sys.hamiltonian);
    // curved Runge-Lenz pair + angular momentum
    sys.integrals.push_back(make_observable("RL1", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto r = sqrt(x * x + y * y);
        auto mu = guard_pos(1.0 - kap * (x * x + y * y), "1 - kappa r^2 <= 0");
        auto L = x * py - y * px;
        return L * sqrt(mu) * py - g * x / r;
    }));
    sys.integrals.push_back(make_observable("RL2", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto r = sqrt(x * x + y * y);
        auto mu = guard_pos(1.0 - kap * (x * x + y * y), "1 - kappa r^2 <= 0");
        auto L = x * py - y * px;
        return -(L * sqrt(mu) * px) - g * y / r;
    }));
    sys.integrals.push_back(make_observable("Lsq", Chart::cartesian, 2, [](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        return L * L;
    }));
    sys.rank_triple = {"H", "RL1", "RL2"};
    sys.euclidean_limit_id = "euclid_c";
    const double half = kap > 0 ? std::sqrt(1.0 / kap) : 1.5;
    sys.box = default_box(std::min(1.5, half));
    sys.domain_margin = [kap](const PhasePoint& p, double m) {
        return std::hypot(p.q1, p.q2) >= std::max(m, 1e-12) && inside_disc(p.q1, p.q2, kap, m);
    };
    return sys;
}

SystemDef make_curved_kepler_k2(const ParamSet& ps) {
    auto sys = base_system("curved_kepler_k2",
                           "Kepler problem on the conformally curved space, Runge-Lenz pair",
                           Chart::cartesian, ps);
    sys.param_names = {"kappa", "g"};
    const double g = ps.g, kap = ps.kappa;
    sys.hamiltonian = make_observable("H", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        auto r = sqrt(x * x + y * y);
        auto s = guard_pos(r - kap, "r - kappa <= 0");
        return (0.5 * (px * px + py * py) * r - g) / s;
    });
    sys.integrals.push_back(sys.hamiltonian);
    sys.integrals.push_back(make_observable("J2", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        return jd2_expr(kap, -g, 0.0, 0.0, x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("J3", Chart::cartesian, 2, [=](auto x, auto y, auto px, auto py) {
        return jd3_expr(kap, -g, 0.0, 0.0, x, y, px, py);
    }));
    sys.integrals.push_back(make_observable("Lsq", Chart::cartesian, 2, [](auto x, auto y, auto px, auto py) {
        auto L = x * py - y * px;
        return L * L;
    }));
    sys.rank_triple = {"H", "J2", "J3"};
    sys.euclidean_limit_id = "euclid_c";
    sys.box = default_box(1.5);
    sys.domain_margin = [kap](const PhasePoint& p, double m) {
        return outside_core(p.q1, p.q2, kap, m);
    };
    return sys;
}

// ---------------------------------------------------------------- ttw / pw
SystemDef make_family_system(Family fam, const ParamSet& ps) {
    const bool osc = fam == Family::oscillator;
    auto sys = base_system(osc ? "ttw_def" : "pw_def",
                           osc ? "rational-m angular deformation of the curved oscillator"
                               : "rational-m angular deformation of the curved Kepler system",
                           Chart::polar, ps);
    sys.param_names = osc ? std::vector<std::string>{"kappa", "alpha", "ka", "kb", "m"}
                          : std::vector<std::string>{"kappa", "g", "ka", "kb", "m"};
    sys.hamiltonian = family_hamiltonian(fam, ps);
    sys.integrals.push_back(family_J1(fam, ps));
    sys.integrals.push_back(family_J2(fam, ps));
    FactorizedConstant K = build_constant(fam, ps);
    sys.integrals.push_back(K.re_K);
    sys.integrals.push_back(K.im_K);
    sys.involutive_pairs = {{"J1", "J2"}};
    sys.rank_triple = {"J1", "J2", "ReK"};
    sys.euclidean_limit_id = sys.id;  // the kappa = 0 member of the same family
    const double kap = ps.kappa, m = ps.m();
    sys.box.q1_min = osc ? 0.3 : std::max(0.3, kap + 0.1);
    sys.box.q1_max = osc ? (kap > 0 ? std::min(1.5, std::sqrt(std::max(1.0 / kap - 0.05, 0.09)))
                                    : 1.5)
                         : 1.5 + std::max(kap, 0.0);
    sys.box.q2_min = 0.0;
    sys.box.q2_max = 2.0 * 3.14159265358979323846;
    const double ka = ps.ka, kb = ps.kb;
    sys.domain_margin = [kap, m, osc, ka, kb](const PhasePoint& p, double mar) {
        const double r = p.q1, phi = p.q2;
        if (kb != 0.0 && std::fabs(std::sin(m * phi)) < std::max(mar, 1e-12)) return false;
        if (ka != 0.0 && std::fabs(std::cos(m * phi)) < std::max(mar, 1e-12)) return false;
        if (r < std::max(mar, 1e-12)) return false;
        if (osc) return kap <= 0 || r * r <= 1.0 / kap - mar;
        return r >= std::max(kap, 0.0) + std::max(mar, 1e-12);
    };
    return sys;
}

}  // namespace

SystemDef build_system(const std::string& id, const ParamSet& params) {
    ParamSet ps = params;
    ps.reduce_m();
    ps.validate();
    if (id == "euclid_a") return make_euclid_a(ps);
    if (id == "euclid_b") return make_euclid_b(ps);
    if (id == "euclid_c") return make_euclid_c(ps);
    if (id == "euclid_d") return make_euclid_d(ps);
    if (id == "def_a") return make_def_a(ps);
    if (id == "def_b") return make_def_b(ps);
    if (id == "def_c") return make_def_c(ps);
    if (id == "def_d") return make_def_d(ps);
    if (id == "osc1d_h1") return make_osc1d(ps, false);
    if (id == "osc1d_h2") return make_osc1d(ps, true);
    if (id == "curved_osc_h1") return make_curved_osc_h1(ps);
    if (id == "curved_osc_h2") {
        ParamSet p2 = ps;
        p2.k2 = 0.0;
        p2.k3 = 0.0;
        auto sys = make_def_a(p2, "curved_osc_h2");
        sys.description = "harmonic oscillator on the conformally curved space";
        sys.param_names = {"kappa", "alpha"};
        // no barrier: the axes are regular, only the kinetic-factor disc remains
        const double kap = p2.kappa;
        sys.domain_margin = [kap](const PhasePoint& p, double m) {
            return inside_disc(p.q1, p.q2, kap, m) &&
                   std::hypot(p.q1, p.q2) >= std::max(m, 1e-12);
        };
        return sys;
    }
    if (id == "curved_kepler_k1") return make_curved_kepler_k1(ps);
    if (id == "curved_kepler_k2") return make_curved_kepler_k2(ps);
    if (id == "ttw_def") return make_family_system(Family::oscillator, ps);
    if (id == "pw_def") return make_family_system(Family::kepler, ps);
    throw UnknownSystem("unknown system id '" + id + "'");
}

std::vector<std::string> system_ids() {
    return {"euclid_a", "euclid_b", "euclid_c", "euclid_d",
            "def_a",    "def_b",    "def_c",    "def_d",
            "osc1d_h1", "osc1d_h2", "curved_osc_h1", "curved_osc_h2",
            "curved_kepler_k1", "curved_kepler_k2", "ttw_def", "pw_def"};
}

std::vector<PhasePoint> domain_sample(const SystemDef& sys, std::uint64_t seed, int n) {
    if (n < 1) throw InvalidParams("domain_sample: n must be >= 1");
    Rng rng(seed);
    std::vector<PhasePoint> out;
    out.reserve(n);
    int attempts = 0;
    while (int(out.size()) < n) {
        if (++attempts > 100000) throw SamplingFailed("domain_sample: rejection budget exhausted");
        PhasePoint p(sys.chart, rng.uniform(sys.box.q1_min, sys.box.q1_max),
                     rng.uniform(sys.box.q2_min, sys.box.q2_max),
                     rng.uniform(sys.box.p_min, sys.box.p_max),
                     rng.uniform(sys.box.p_min, sys.box.p_max));
        if (!sys.well_inside(p)) continue;
        out.push_back(p);
    }
    return out;
}

}  // namespace superint
