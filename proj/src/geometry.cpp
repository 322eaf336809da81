#include "superint/geometry.hpp"

#include <cmath>

#include "superint/phase.hpp"

namespace superint {

std::string metric_name(MetricId id) {
    switch (id) {
        case MetricId::osc_conformal: return "osc_conformal";
        case MetricId::osc_constant_curv: return "osc_constant_curv";
        case MetricId::kepler_conformal: return "kepler_conformal";
    }
    return "?";
}

MetricId metric_from_name(const std::string& name) {
    if (name == "osc_conformal") return MetricId::osc_conformal;
    if (name == "osc_constant_curv") return MetricId::osc_constant_curv;
    if (name == "kepler_conformal") return MetricId::kepler_conformal;
    throw InvalidParams("unknown metric '" + name + "'");
}

MetricDef make_metric(MetricId id, double kappa) {
    MetricDef m;
    m.id = id;
    m.kappa = kappa;
    const double k = kappa;
    switch (id) {
        case MetricId::osc_conformal:
            m.components = [k](double x, double y) -> std::array<double, 3> {
                const double f = 1.0 - k * (x * x + y * y);
                return {f, 0.0, f};
            };
            m.positive_definite = [k](double x, double y) {
                return 1.0 - k * (x * x + y * y) > 0.0;
            };
            break;
        case MetricId::osc_constant_curv:
            m.components = [k](double x, double y) -> std::array<double, 3> {
                const double f = 1.0 - k * (x * x + y * y);
                return {(1.0 - k * y * y) / f, k * x * y / f, (1.0 - k * x * x) / f};
            };
            m.positive_definite = [k](double x, double y) {
                return 1.0 - k * (x * x + y * y) > 0.0;
            };
            break;
        case MetricId::kepler_conformal:
            m.components = [k](double x, double y) -> std::array<double, 3> {
                const double r = std::hypot(x, y);
                const double f = 1.0 - k / r;
                return {f, 0.0, f};
            };
            m.positive_definite = [k](double x, double y) {
                const double r = std::hypot(x, y);
                return r > 0.0 && r > k;
            };
            break;
    }
    return m;
}

CurvatureValue curvature(const MetricDef& metric, double x, double y) {
    if (!metric.positive_definite(x, y))
        throw DomainViolation("curvature: metric not positive definite here");
    const double k = metric.kappa;
    const double r2 = x * x + y * y;
    CurvatureValue out;
    switch (metric.id) {
        case MetricId::osc_conformal: {
            const double f = 1.0 - k * r2;
            out.R1212 = 2.0 * k / f;
            out.K = 2.0 * k / (f * f * f);
            break;
        }
        case MetricId::osc_constant_curv: {
            const double f = 1.0 - k * r2;
            out.R1212 = k / f;  // det g = 1/(1 - kappa r^2)
            out.K = k;
            break;
        }
        case MetricId::kepler_conformal: {
            const double r = std::sqrt(r2);
            const double s = r - k;
            out.R1212 = k / (2.0 * r2 * s);
            out.K = k / (2.0 * s * s * s);
            break;
        }
    }
    return out;
}

namespace {

// Brioschi formula at one step size.
double brioschi(const MetricDef& m, double x, double y, double h) {
    auto gE = [&](double u, double v) { return m.components(u, v)[0]; };
    auto gF = [&](double u, double v) { return m.components(u, v)[1]; };
    auto gG = [&](double u, double v) { return m.components(u, v)[2]; };

    auto dx = [&](auto f, double u, double v) { return (f(u + h, v) - f(u - h, v)) / (2 * h); };
    auto dy = [&](auto f, double u, double v) { return (f(u, v + h) - f(u, v - h)) / (2 * h); };
    auto dxx = [&](auto f, double u, double v) {
        return (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / (h * h);
    };
    auto dyy = [&](auto f, double u, double v) {
        return (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / (h * h);
    };
    auto dxy = [&](auto f, double u, double v) {
        return (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) /
               (4 * h * h);
    };

    const double E = gE(x, y), F = gF(x, y), G = gG(x, y);
    const double Eu = dx(gE, x, y), Ev = dy(gE, x, y);
    const double Gu = dx(gG, x, y), Gv = dy(gG, x, y);
    const double Fu = dx(gF, x, y), Fv = dy(gF, x, y);
    const double Evv = dyy(gE, x, y), Guu = dxx(gG, x, y), Fuv = dxy(gF, x, y);

    auto det3 = [](double a11, double a12, double a13, double a21, double a22, double a23,
                   double a31, double a32, double a33) {
        return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
               a13 * (a21 * a32 - a22 * a31);
    };
    const double m1 = det3(-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
                           Fv - 0.5 * Gu, E, F,
                           0.5 * Gv, F, G);
    const double m2 = det3(0.0, 0.5 * Ev, 0.5 * Gu,
                           0.5 * Ev, E, F,
                           0.5 * Gu, F, G);
    const double den = E * G - F * F;
    return (m1 - m2) / (den * den);
}

}  // namespace

double curvature_oracle(const MetricDef& metric, double x, double y, double h) {
    // the stencil must stay inside the metric's domain
    for (double dx_ : {-h, 0.0, h})
        for (double dy_ : {-h, 0.0, h})
            if (!metric.positive_definite(x + dx_, y + dy_))
                throw DomainViolation("curvature_oracle: stencil leaves the metric domain");
    const double kh = brioschi(metric, x, y, h);
    const double kh2 = brioschi(metric, x, y, 0.5 * h);
    return (4.0 * kh2 - kh) / 3.0;  // Richardson on the O(h^2) stencil
}

}  // namespace superint
