#pragma once

/** \file poisson.hpp
    Numerical Poisson brackets from exact dual gradients, involution
    certification and functional-independence rank tests.
*/

#include <string>
#include <vector>

#include "superint/catalog.hpp"
#include "superint/observable.hpp"

namespace superint {

/// {f,g} = sum_k df/dq_k dg/dp_k - df/dp_k dg/dq_k, from exact gradients.
double poisson_bracket(const Observable& f, const Observable& g, const PhasePoint& p);

/// Bracket value plus the gradient-magnitude product used for scaling.
struct BracketSample {
    double value = 0;
    double scale = 0;  // |grad f| * |grad g| + 1e-300
};
BracketSample poisson_bracket_scaled(const Observable& f, const Observable& g,
                                     const PhasePoint& p);

struct BracketReport {
    std::string first, second;
    int points_tested = 0;
    double max_abs_residual = 0;
    double max_scaled_residual = 0;
    bool commutes = false;

    std::string to_json() const;
};

/// One report per (integral, H) pair and per declared involutive pair,
/// over n seeded domain points.
std::vector<BracketReport> certify_involution(const SystemDef& sys, std::uint64_t seed, int n,
                                              double tol = 1e-10);

/// Report for an arbitrary observable pair over sampled points.
BracketReport bracket_report(const SystemDef& sys, const Observable& f, const Observable& g,
                             std::uint64_t seed, int n, double tol = 1e-10);

/// Numerical rank of the stacked gradients: count of sigma_i/sigma_1 > threshold.
int independence_rank(const std::vector<const Observable*>& obs, const PhasePoint& p,
                      double threshold = 1e-8);

}  // namespace superint
