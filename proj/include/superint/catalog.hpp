#pragma once

/** \file catalog.hpp
    Every Hamiltonian in the collection as a SystemDef: the Hamiltonian, its
    named integrals of motion, a domain predicate, declared involutive pairs,
    and sampling metadata.  Systems are keyed by a stable string id (part of
    the CLI/JSON contract):

      euclid_a..euclid_d      flat systems, two separable charts each
      def_a..def_d            kappa-deformed versions of the above
      osc1d_h1, osc1d_h2      one-dimensional nonlinear oscillators
      curved_osc_h1/h2        2-D oscillators on curved spaces
      curved_kepler_k1/k2     2-D Kepler problems on curved spaces
      ttw_def, pw_def         higher-order (rational-m) angular deformations
*/

#include <functional>
#include <string>
#include <vector>

#include "superint/observable.hpp"
#include "superint/phase.hpp"
#include "superint/rng.hpp"

namespace superint {

/// Rejection-sampling box; interpretation of q1/q2 depends on the chart.
struct SampleBox {
    double q1_min = -1.5, q1_max = 1.5;
    double q2_min = -1.5, q2_max = 1.5;
    double p_min = -1.5, p_max = 1.5;
};

struct SystemDef {
    std::string id;
    std::string description;
    ParamSet params;
    Chart chart = Chart::cartesian;
    Observable hamiltonian;
    std::vector<Observable> integrals;  // named; hamiltonian is integrals[0] or reproducible
    std::vector<std::pair<std::string, std::string>> involutive_pairs;
    std::vector<std::string> rank_triple;  // integral names used in the independence test
    std::vector<std::string> param_names;  // parameters this system actually reads
    std::string euclidean_limit_id;        // empty if none
    SampleBox box;

    /// margin = 0 gives the strict domain; margin > 0 requires the stated
    /// distance from every singular set (in the coordinate functions used to
    /// define them: |x|, |y|, r, 1/kappa - r^2, r - kappa, trig factors).
    std::function<bool(const PhasePoint&, double margin)> domain_margin;

    bool in_domain(const PhasePoint& p) const { return domain_margin(p, 0.0); }
    bool well_inside(const PhasePoint& p) const { return domain_margin(p, 0.05); }

    const Observable& integral(const std::string& name) const;
    bool has_integral(const std::string& name) const;
};

/// Construct a catalog system; throws UnknownSystem / InvalidParams.
SystemDef build_system(const std::string& id, const ParamSet& params);

/// All catalog ids in display order.
std::vector<std::string> system_ids();

/// Generic polar-separable Hamiltonian
///   H = [p_r^2 + p_phi^2/r^2 + alpha^2 A(r) + B(phi)/r^2] / (2 (1-kappa r^2))
/// with the separation integral J = p_phi^2 + B(phi).
SystemDef generic_polar_system(const OneVarFn& A, const OneVarFn& B, double kappa,
                               double alpha = 1.0);

/// n points satisfying the margin predicate, deterministic in the seed.
std::vector<PhasePoint> domain_sample(const SystemDef& sys, std::uint64_t seed, int n);

}  // namespace superint
