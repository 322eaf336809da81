#include "superint/coords.hpp"

#include <cmath>

namespace superint {

std::string chart_name(Chart c) {
    switch (c) {
        case Chart::cartesian: return "cartesian";
        case Chart::polar: return "polar";
        case Chart::parabolic: return "parabolic";
        case Chart::parabolic_rotated: return "parabolic_rotated";
    }
    return "?";
}

Chart chart_from_name(const std::string& name) {
    if (name == "cartesian") return Chart::cartesian;
    if (name == "polar") return Chart::polar;
    if (name == "parabolic") return Chart::parabolic;
    if (name == "parabolic_rotated") return Chart::parabolic_rotated;
    throw InvalidParams("unknown chart '" + name + "'");
}

namespace {

PhasePoint to_cartesian(const PhasePoint& p) {
    std::array<double, 4> v{};
    switch (p.chart) {
        case Chart::cartesian: return p;
        case Chart::polar:
            if (p.q1 <= 0) throw SingularTransform("polar->cartesian needs r > 0");
            v = polar_to_cart(p.q1, p.q2, p.p1, p.p2);
            break;
        case Chart::parabolic:
            if (p.q1 == 0 && p.q2 == 0) throw SingularTransform("parabolic origin is singular");
            v = parabolic_to_cart(p.q1, p.q2, p.p1, p.p2);
            break;
        case Chart::parabolic_rotated:
            if (p.q1 == 0 && p.q2 == 0) throw SingularTransform("parabolic origin is singular");
            v = parabolic_rotated_to_cart(p.q1, p.q2, p.p1, p.p2);
            break;
    }
    return {Chart::cartesian, v[0], v[1], v[2], v[3]};
}

PhasePoint from_cartesian(const PhasePoint& c, Chart target) {
    const double r = std::hypot(c.q1, c.q2);
    std::array<double, 4> v{};
    switch (target) {
        case Chart::cartesian: return c;
        case Chart::polar:
            if (r == 0) throw SingularTransform("cartesian->polar singular at origin");
            v = cart_to_polar(c.q1, c.q2, c.p1, c.p2);
            break;
        case Chart::parabolic:
            if (r + c.q1 <= 0) throw SingularTransform("cartesian->parabolic singular on x <= 0 axis");
            v = cart_to_parabolic(c.q1, c.q2, c.p1, c.p2);
            break;
        case Chart::parabolic_rotated:
            if (r + c.q2 <= 0) throw SingularTransform("cartesian->rotated singular on y <= 0 axis");
            v = cart_to_parabolic_rotated(c.q1, c.q2, c.p1, c.p2);
            break;
    }
    return {target, v[0], v[1], v[2], v[3]};
}

}  // namespace

PhasePoint to_chart(const PhasePoint& p, Chart target) {
    p.validate();
    if (p.chart == target) return p;
    PhasePoint out = from_cartesian(to_cartesian(p), target);
    out.validate();
    return out;
}

double evaluate_in_chart(const Observable& obs, const PhasePoint& p) {
    return obs(to_chart(p, obs.chart));
}

}  // namespace superint
