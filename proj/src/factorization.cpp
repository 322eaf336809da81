#include "superint/factorization.hpp"

#include <cmath>
#include <numeric>

namespace superint {

namespace {

// Shared generic-arithmetic building blocks of the two polar families.
// T is double or Dual.
struct FamilyDefs {
    Family fam;
    double kap, al, g, ka, kb, m;

    template <class T>
    T F(const T& phi) const {
        auto c = cos(m * phi), s = sin(m * phi);
        auto out = c * 0.0;  // type-preserving zero
        if (ka != 0.0) out = out + ka / (c * c);
        if (kb != 0.0) out = out + kb / (s * s);
        return out;
    }

    // kinetic prefactor 1/mu with the domain guard
    template <class T>
    T inv_mu(const T& r) const {
        if (fam == Family::oscillator) {
            auto mu = 1.0 - kap * (r * r);
            if (value_of(mu) <= 0.0) throw DomainViolation("1 - kappa r^2 <= 0");
            return 1.0 / mu;
        }
        auto mu = (r - kap) / r;
        if (value_of(mu) <= 0.0) throw DomainViolation("r - kappa <= 0");
        return 1.0 / mu;
    }

    template <class T>
    T J2(const T& phi, const T& pph) const {
        return fam == Family::oscillator ? pph * pph + F(phi) : pph * pph + 2.0 * F(phi);
    }

    template <class T>
    T H(const T& r, const T& phi, const T& pr, const T& pph) const {
        auto im = inv_mu(r);
        auto kin = 0.5 * im * (pr * pr + (pph * pph) / (r * r));
        if (fam == Family::oscillator)
            return kin + im * (0.5 * al * al * (r * r) + 0.5 * F(phi) / (r * r));
        return kin + (im / r) * (F(phi) / r - g);
    }

    template <class T>
    T lambda(const T& r, const T& phi, const T& pph) const {
        return inv_mu(r) * sqrt(J2(phi, pph)) / (r * r);
    }

    template <class T>
    T A1(const T& r, const T& phi, const T& pr, const T& pph) const {
        auto a = pr * sqrt(J2(phi, pph));
        return fam == Family::oscillator ? (2.0 / r) * a : a;
    }

    template <class T>
    T A2(const T& r, const T& phi, const T& pr, const T& pph) const {
        auto j2 = J2(phi, pph);
        if (fam == Family::oscillator)  // A2 = J1 - 2 J2 / r^2
            return 2.0 * H(r, phi, pr, pph) - 2.0 * j2 / (r * r);
        // A2 = g - J2/r - (kappa/2) J1
        return g - j2 / r - kap * H(r, phi, pr, pph);
    }

    template <class T>
    T B1(const T& phi, const T& pph) const {
        auto j2 = J2(phi, pph);
        const double off = fam == Family::oscillator ? (kb - ka) : 2.0 * (kb - ka);
        return j2 * cos(2.0 * m * phi) + off;
    }

    template <class T>
    T B2(const T& phi, const T& pph) const {
        return pph * sqrt(J2(phi, pph)) * sin(2.0 * m * phi);
    }
};

FamilyDefs defs_for(Family fam, const ParamSet& ps) {
    return {fam, ps.kappa, ps.alpha, ps.g, ps.ka, ps.kb, ps.m()};
}

void require_nonneg_couplings(const ParamSet& ps) {
    if (ps.ka < 0 || ps.kb < 0)
        throw NegativeCoupling("factorization requires ka, kb >= 0 (J2 > 0 needs sqrt)");
}

template <class T>
struct C2 {
    T re, im;
};
template <class T>
C2<T> cmul(const C2<T>& a, const C2<T>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T>
C2<T> cpowi(C2<T> x, int e) {
    C2<T> r{T(1.0), T(0.0)};
    while (e > 0) {
        if (e & 1) r = cmul(r, x);
        x = cmul(x, x);
        e >>= 1;
    }
    return r;
}

// K = A^eA (B*)^eB.  Direct products for small exponents; log-polar
// (log-modulus + continuous argument) above that to avoid overflow.
template <class T>
C2<T> k_product(const FamilyDefs& d, int eA, int eB, bool log_polar, const T& r, const T& phi,
                const T& pr, const T& pph) {
    auto a1 = d.A1(r, phi, pr, pph), a2 = d.A2(r, phi, pr, pph);
    auto b1 = d.B1(phi, pph), b2 = d.B2(phi, pph);
    auto amod2 = a1 * a1 + a2 * a2, bmod2 = b1 * b1 + b2 * b2;
    if (value_of(amod2) == 0.0 || value_of(bmod2) == 0.0)
        throw ZeroModulus("K undefined where |A| or |B| vanishes");
    if (!log_polar) {
        auto ka_ = cpowi(C2<T>{a1, a2}, eA);
        auto kb_ = cpowi(C2<T>{b1, -b2}, eB);
        return cmul(ka_, kb_);
    }
    auto logmod = 0.5 * (double(eA) * log(amod2) + double(eB) * log(bmod2));
    auto ang = double(eA) * atan2(a2, a1) - double(eB) * atan2(b2, b1);
    auto mod = exp(logmod);
    return {mod * cos(ang), mod * sin(ang)};
}

}  // namespace

double f_m(double phi, const ParamSet& ps) {
    const double m = ps.m();
    if (std::sin(m * phi) == 0.0 || std::cos(m * phi) == 0.0)
        throw AngularSingularity("F_m pole at sin(m phi) = 0 or cos(m phi) = 0");
    const double c = std::cos(m * phi), s = std::sin(m * phi);
    return ps.ka / (c * c) + ps.kb / (s * s);
}

Observable family_hamiltonian(Family fam, const ParamSet& ps) {
    const auto d = defs_for(fam, ps);
    return make_observable("H", Chart::polar, 2,
                           [d](auto r, auto phi, auto pr, auto pph) { return d.H(r, phi, pr, pph); });
}

Observable family_J1(Family fam, const ParamSet& ps) {
    const auto d = defs_for(fam, ps);
    return make_observable("J1", Chart::polar, 2, [d](auto r, auto phi, auto pr, auto pph) {
        return 2.0 * d.H(r, phi, pr, pph);
    });
}

Observable family_J2(Family fam, const ParamSet& ps) {
    const auto d = defs_for(fam, ps);
    return make_observable("J2", Chart::polar, 2, [d](auto, auto phi, auto, auto pph) {
        return d.J2(phi, pph);
    });
}

namespace {
FactorizedPairs build_pairs(Family fam, const ParamSet& ps) {
    require_nonneg_couplings(ps);
    const auto d = defs_for(fam, ps);
    FactorizedPairs out;
    out.A.re = make_observable("A1", Chart::polar, kNonPolynomial,
                               [d](auto r, auto phi, auto pr, auto pph) { return d.A1(r, phi, pr, pph); });
    out.A.im = make_observable("A2", Chart::polar, kNonPolynomial,
                               [d](auto r, auto phi, auto pr, auto pph) { return d.A2(r, phi, pr, pph); });
    out.B.re = make_observable("B1", Chart::polar, kNonPolynomial,
                               [d](auto, auto phi, auto, auto pph) { return d.B1(phi, pph); });
    out.B.im = make_observable("B2", Chart::polar, kNonPolynomial,
                               [d](auto, auto phi, auto, auto pph) { return d.B2(phi, pph); });
    // dA/dt = i c lambda A with c = 2 (oscillator) or 1 (Kepler);
    // dB/dt = i 2m lambda B for both.
    out.A.rate_num = fam == Family::oscillator ? 2 : 1;
    out.A.rate_den = 1;
    const long bg = std::gcd(2 * ps.m_num, ps.m_den);
    out.B.rate_num = 2 * ps.m_num / bg;
    out.B.rate_den = ps.m_den / bg;
    out.lambda_kappa = make_observable("lambda_kappa", Chart::polar, kNonPolynomial,
                                       [d](auto r, auto phi, auto, auto pph) {
                                           return d.lambda(r, phi, pph);
                                       });
    return out;
}
}  // namespace

FactorizedPairs build_oscillator_pair(const ParamSet& ps) {
    return build_pairs(Family::oscillator, ps);
}
FactorizedPairs build_kepler_pair(const ParamSet& ps) { return build_pairs(Family::kepler, ps); }

FactorizedConstant build_constant(Family fam, const ParamSet& ps, bool force_log_polar) {
    require_nonneg_couplings(ps);
    ParamSet p = ps;
    p.reduce_m();
    FactorizedConstant k;
    k.family = fam;
    k.p = p.m_num;
    k.q = p.m_den;
    k.e_A = int(fam == Family::oscillator ? p.m_num : 2 * p.m_num);
    k.e_B = int(p.m_den);
    const bool log_polar = force_log_polar || std::max(k.e_A, k.e_B) > 8;
    const auto d = defs_for(fam, p);
    const int eA = k.e_A, eB = k.e_B;
    k.re_K = make_observable("ReK", Chart::polar, kNonPolynomial,
                             [d, eA, eB, log_polar](auto r, auto phi, auto pr, auto pph) {
                                 return k_product(d, eA, eB, log_polar, r, phi, pr, pph).re;
                             });
    k.im_K = make_observable("ImK", Chart::polar, kNonPolynomial,
                             [d, eA, eB, log_polar](auto r, auto phi, auto pr, auto pph) {
                                 return k_product(d, eA, eB, log_polar, r, phi, pr, pph).im;
                             });
    return k;
}

Observable modulus_sq_surrogate(Family fam, const ParamSet& ps) {
    FactorizedConstant k = build_constant(fam, ps);
    const auto d = defs_for(fam, ps);
    const int eA = k.e_A, eB = k.e_B;
    return make_observable("ModKsq", Chart::polar, kNonPolynomial,
                           [d, eA, eB](auto r, auto phi, auto pr, auto pph) {
                               auto a1 = d.A1(r, phi, pr, pph), a2 = d.A2(r, phi, pr, pph);
                               auto b1 = d.B1(phi, pph), b2 = d.B2(phi, pph);
                               return powi(a1 * a1 + a2 * a2, eA) * powi(b1 * b1 + b2 * b2, eB);
                           });
}

Observable unbalanced_product_re(Family fam, const ParamSet& ps, int extra) {
    FactorizedConstant k = build_constant(fam, ps);
    const auto d = defs_for(fam, ps);
    const int eA = k.e_A + extra, eB = k.e_B;
    return make_observable("ReK_unbalanced", Chart::polar, kNonPolynomial,
                           [d, eA, eB](auto r, auto phi, auto pr, auto pph) {
                               return k_product(d, eA, eB, false, r, phi, pr, pph).re;
                           });
}

}  // namespace superint
