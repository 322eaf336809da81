#pragma once

/** \file geometry.hpp
    The configuration-space metrics behind the curved systems, their
    closed-form curvature, and an independent finite-difference curvature
    oracle (Brioschi formula on the metric components).
*/

#include <array>
#include <functional>
#include <string>

#include "superint/errors.hpp"

namespace superint {

enum class MetricId { osc_conformal, osc_constant_curv, kepler_conformal };

struct MetricDef {
    MetricId id;
    double kappa = 0;
    // (g11, g12, g22) at (x, y)
    std::function<std::array<double, 3>(double, double)> components;
    std::function<bool(double, double)> positive_definite;
};

MetricDef make_metric(MetricId id, double kappa);
std::string metric_name(MetricId id);
MetricId metric_from_name(const std::string& name);

struct CurvatureValue {
    double R1212 = 0;
    double K = 0;  // Gaussian curvature, R1212/det[g]
};

/// Closed-form curvature:
///   osc_conformal      ds^2 = (1-kappa r^2)(dx^2+dy^2):
///                      R1212 = 2k/(1-k r^2),       K = 2k/(1-k r^2)^3
///   osc_constant_curv  ds^2 = [(1-k y^2)dx^2 + (1-k x^2)dy^2 + 2k xy dx dy]/(1-k r^2):
///                      R1212 = k/(1-k r^2),        K = k  (constant)
///   kepler_conformal   ds^2 = (1-kappa/r)(dx^2+dy^2):
///                      R1212 = k/(2 r^2 (r-k)),    K = k/(2 (r-k)^3)
CurvatureValue curvature(const MetricDef& metric, double x, double y);

/// Gaussian curvature from central finite differences of the metric
/// components (Brioschi formula), Richardson-extrapolated with steps h, h/2.
double curvature_oracle(const MetricDef& metric, double x, double y, double h = 1e-4);

}  // namespace superint
