#pragma once

/** \file certify.hpp
    Certification workflows assembled from the bracket engine: full-system
    bracket sweeps, functional-independence rank sweeps, and kappa->0 limit
    scaling, with a JSON-serializable aggregate report.
*/

#include <string>
#include <vector>

#include "superint/catalog.hpp"
#include "superint/poisson.hpp"

namespace superint {

struct RankSweep {
    std::vector<std::string> names;
    int expected_rank = 0;
    int points_tested = 0;
    double pass_fraction = 0;  // fraction of points with rank == expected
    bool pass = false;         // pass_fraction >= required fraction
};

/// Rank of the system's declared triple at sampled points.
RankSweep rank_sweep(const SystemDef& sys, std::uint64_t seed, int n, double threshold = 1e-8,
                     double required_fraction = 0.95);

struct KappaRow {
    std::string name;
    std::vector<double> deviations;  // max |J(kappa) - J(0)| over the fixed points
    double slope = 0;                // log-log fit; meaningless if exact_zero
    bool exact_zero = false;         // all deviations <= 1e-14
};

/// Deviation of each integral from its kappa = 0 limit at fixed sampled
/// points, for each kappa in `kappas` (system rebuilt per kappa; other
/// parameters fixed).  Throws NoEuclideanLimit for systems without one.
std::vector<KappaRow> kappa_sweep(const std::string& id, const ParamSet& base,
                                  const std::vector<double>& kappas, std::uint64_t seed, int n);

struct CertifyResult {
    std::string system_id;
    std::vector<BracketReport> brackets;
    RankSweep rank;
    std::vector<KappaRow> kappa_rows;  // empty when not applicable
    double kappa_slope_lo = 0.85, kappa_slope_hi = 1.15;
    bool pass = false;

    std::string to_json() const;
};

/// Bracket + rank (+ kappa-limit when applicable) certification of a system.
CertifyResult certify_system(const std::string& id, const ParamSet& params, std::uint64_t seed,
                             int n, double tol = 1e-10, bool with_kappa_sweep = true);

/// Least-squares slope of log(dev) vs log(kappa).
double loglog_slope(const std::vector<double>& kappas, const std::vector<double>& devs);

}  // namespace superint
