#pragma once

/** \file factorization.hpp
    Complex-factorized higher-order constants for the polar-separable
    oscillator (TTW-type) and Kepler (PW-type) deformations: the angular
    function F_m, the complex pairs (A_r, B_phi) whose time evolutions are
    pure phase rotations with commensurate rates, and the conserved product
    K = A^eA (B*)^eB for rational m = p/q.
*/

#include "superint/observable.hpp"
#include "superint/phase.hpp"

namespace superint {

enum class Family { oscillator, kepler };

/// F_m(phi) = ka/cos^2(m phi) + kb/sin^2(m phi).
double f_m(double phi, const ParamSet& ps);

/// Complex function Z = re + i*im with dZ/dt = i * rate * lambda_kappa * Z
/// along the flow (rate is rational: rate_num/rate_den).
struct ComplexPair {
    Observable re, im;
    long rate_num = 1, rate_den = 1;
    double rate() const { return double(rate_num) / double(rate_den); }
};

struct FactorizedPairs {
    ComplexPair A, B;
    Observable lambda_kappa;
};

/// K = A^e_A (B*)^e_B, Poisson-commuting with the family Hamiltonian.
/// Exponents: (p, q) for the oscillator family, (2p, q) for Kepler.
struct FactorizedConstant {
    Family family = Family::oscillator;
    long p = 1, q = 1;
    int e_A = 1, e_B = 1;
    Observable re_K, im_K;
};

// Polar-chart observables of the two families (m, couplings from ps).
Observable family_hamiltonian(Family fam, const ParamSet& ps);
Observable family_J1(Family fam, const ParamSet& ps);  // J1 = 2 H
Observable family_J2(Family fam, const ParamSet& ps);

/// Requires ka, kb >= 0 (so J2 = p_phi^2 + {1,2} F_m stays positive).
FactorizedPairs build_oscillator_pair(const ParamSet& ps);
FactorizedPairs build_kepler_pair(const ParamSet& ps);

/// force_log_polar switches K to the log-modulus/argument evaluation path
/// (chosen automatically when max(e_A, e_B) > 8).
FactorizedConstant build_constant(Family fam, const ParamSet& ps, bool force_log_polar = false);

/// |K|^2 as a function of phase space; functionally dependent on (J1, J2) --
/// the rank-test surrogate.
Observable modulus_sq_surrogate(Family fam, const ParamSet& ps);

/// Deliberately rate-unbalanced product Re[A^(e_A+extra) (B*)^e_B]; a
/// negative control that must fail conservation checks.
Observable unbalanced_product_re(Family fam, const ParamSet& ps, int extra = 1);

}  // namespace superint
