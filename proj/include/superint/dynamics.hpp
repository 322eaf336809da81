#pragma once

/** \file dynamics.hpp
    Hamiltonian flow integration.  Every deformed Hamiltonian here has a
    position-dependent kinetic term, so the workhorse is implicit midpoint
    (symmetric, symplectic) with Newton iterations on exact dual gradients;
    an embedded 5(4) Dormand-Prince integrator provides an independent
    adaptive reference path.
*/

#include <string>
#include <vector>

#include "superint/catalog.hpp"

namespace superint {

enum class Method { implicit_midpoint, adaptive_rk };

struct IntegratorConfig {
    Method method = Method::adaptive_rk;
    double step = 1e-3;       // midpoint step
    double rel_tol = 1e-11;   // adaptive tolerances
    double abs_tol = 1e-11;
    double sample_dt = 0.1;   // output sampling interval
    int max_newton_iters = 50;
    double newton_tol = 1e-13;

    void validate() const {
        if (step <= 0 || rel_tol <= 0 || abs_tol <= 0 || sample_dt <= 0)
            throw InvalidParams("integrator config: steps and tolerances must be > 0");
    }
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<PhasePoint> points;
    std::vector<std::string> integral_names;
    std::vector<std::vector<double>> integral_values;  // [integral][sample]
    bool domain_exit = false;
    double t_reached = 0;

    /// max_t |J(t) - J(0)| / max(|J(0)|, 1) per integral.
    std::vector<double> drift() const;

    /// rows: t, q1, q2, p1, p2, J_1..J_n (17 significant digits).
    std::string to_csv() const;
};

struct DriftSummary {
    std::string name;
    double max_drift = 0;
    double mean_drift = 0;
    bool exceeds = false;
};

TrajectoryRecord integrate(const SystemDef& sys, const PhasePoint& x0, double t_end,
                           const IntegratorConfig& cfg);

std::vector<DriftSummary> drift_report(const TrajectoryRecord& traj, double tol = 1e-8);

}  // namespace superint
