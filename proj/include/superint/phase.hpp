#pragma once

/** \file phase.hpp
    Phase-space domain types: charts, points, and parameter sets.
    Everything is an immutable value type; all quantities dimensionless
    with unit mass.
*/

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "superint/errors.hpp"

namespace superint {

enum class Chart { cartesian, polar, parabolic, parabolic_rotated };

std::string chart_name(Chart c);
Chart chart_from_name(const std::string& name);

/// Two coordinates and their conjugate momenta, tagged with a chart.
struct PhasePoint {
    Chart chart = Chart::cartesian;
    double q1 = 0, q2 = 0, p1 = 0, p2 = 0;

    PhasePoint() = default;
    PhasePoint(Chart c, double q1_, double q2_, double p1_, double p2_)
        : chart(c), q1(q1_), q2(q2_), p1(p1_), p2(p2_) {}

    std::array<double, 4> coords() const { return {q1, q2, p1, p2}; }

    /// Finite components plus the chart's coordinate restrictions
    /// (polar: r > 0; parabolic branches: first coordinate > 0).
    void validate() const {
        if (!std::isfinite(q1) || !std::isfinite(q2) || !std::isfinite(p1) || !std::isfinite(p2))
            throw DomainViolation("phase point has non-finite components");
        if (chart == Chart::polar && q1 <= 0)
            throw DomainViolation("polar chart requires r > 0");
        if ((chart == Chart::parabolic || chart == Chart::parabolic_rotated) && q1 <= 0)
            throw DomainViolation("parabolic chart branch requires first coordinate > 0");
    }
};

/// Parameters shared by every catalog system; fields irrelevant to a given
/// system are ignored by it.  m = m_num/m_den is kept in lowest terms.
struct ParamSet {
    double kappa = 0.0;   // deformation / curvature parameter
    double alpha = 1.0;   // oscillator frequency
    double g = 1.0;       // Kepler coupling
    double k1 = 1.0, k2 = 1.0, k3 = 1.0;
    double ka = 1.0, kb = 1.0;  // angular strengths
    long m_num = 1, m_den = 1;  // rational angular frequency

    double m() const { return double(m_num) / double(m_den); }

    void reduce_m() {
        if (m_den == 0) throw InvalidParams("m_den must be >= 1");
        if (m_den < 0) { m_den = -m_den; m_num = -m_num; }
        long g_ = std::gcd(m_num < 0 ? -m_num : m_num, m_den);
        if (g_ > 1) { m_num /= g_; m_den /= g_; }
    }

    void validate() const {
        auto finite = [](double x) { return std::isfinite(x); };
        if (!finite(kappa) || !finite(alpha) || !finite(g) || !finite(k1) || !finite(k2) ||
            !finite(k3) || !finite(ka) || !finite(kb))
            throw InvalidParams("non-finite parameter");
        if (std::fabs(kappa) > 1e3)
            throw InvalidParams("kappa out of sane range (|kappa| <= 1e3)");
        if (alpha < 0) throw InvalidParams("alpha must be >= 0");
        if (m_den < 1) throw InvalidParams("m_den must be >= 1");
        if (m_num < 1) throw InvalidParams("m_num must be >= 1");
        if (std::gcd(m_num, m_den) != 1) throw InvalidParams("m not in lowest terms");
    }
};

inline double sq(double x) { return x * x; }

}  // namespace superint
