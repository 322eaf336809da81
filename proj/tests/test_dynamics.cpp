#include <doctest.h>

#include <cmath>

#include "superint/catalog.hpp"
#include "superint/dynamics.hpp"

using namespace superint;

namespace {
constexpr double kPi = 3.14159265358979323846;

IntegratorConfig adaptive(double tol = 1e-11, double sample_dt = 0.1) {
    IntegratorConfig c;
    c.method = Method::adaptive_rk;
    c.rel_tol = tol;
    c.abs_tol = tol;
    c.sample_dt = sample_dt;
    return c;
}

IntegratorConfig midpoint(double h, double sample_dt = 0.1) {
    IntegratorConfig c;
    c.method = Method::implicit_midpoint;
    c.step = h;
    c.sample_dt = sample_dt;
    return c;
}
}  // namespace

TEST_CASE("isotropic-oscillator circular orbit returns after one period") {
    ParamSet ps;
    ps.alpha = 1.0;
    ps.k2 = 0.0;
    ps.k3 = 0.0;
    SystemDef sys = build_system("euclid_a", ps);
    PhasePoint x0(Chart::cartesian, 1.0, 0.0, 0.0, 1.0);
    const TrajectoryRecord rec = integrate(sys, x0, 2.0 * kPi, adaptive(1e-12, kPi / 8));
    REQUIRE_FALSE(rec.domain_exit);
    const PhasePoint end = rec.points.back();
    CHECK(std::fabs(end.q1 - 1.0) < 1e-6);
    CHECK(std::fabs(end.q2) < 1e-6);
    CHECK(std::fabs(end.p1) < 1e-6);
    CHECK(std::fabs(end.p2 - 1.0) < 1e-6);
}

TEST_CASE("drift statistics on short deformed runs") {
    ParamSet ps;
    ps.kappa = 0.2;
    SystemDef sys = build_system("def_a", ps);
    PhasePoint x0(Chart::cartesian, 0.8, 0.6, 0.3, -0.4);
    const TrajectoryRecord rec = integrate(sys, x0, 20.0, adaptive(1e-11));
    REQUIRE_FALSE(rec.domain_exit);
    REQUIRE(rec.times.size() == 201);
    for (double d : rec.drift()) CHECK(d < 1e-8);
}

TEST_CASE("drift_report definitions on crafted series") {
    TrajectoryRecord rec;
    rec.integral_names = {"const", "wobble"};
    rec.integral_values.resize(2);
    for (int i = 0; i <= 100; ++i) {
        const double t = 0.1 * i;
        rec.times.push_back(t);
        rec.points.emplace_back();
        rec.integral_values[0].push_back(2.5);
        rec.integral_values[1].push_back(2.5 * (1.0 + 1e-9 * std::sin(t)));
    }
    const auto rep = drift_report(rec, 1e-8);
    CHECK(rep[0].max_drift == 0.0);
    CHECK_FALSE(rep[0].exceeds);
    CHECK(rep[1].max_drift == doctest::Approx(1e-9).epsilon(0.02));
    CHECK_FALSE(rep[1].exceeds);

    // corrupted-integral control: a series that genuinely wanders
    TrajectoryRecord bad = rec;
    for (int i = 0; i <= 100; ++i) bad.integral_values[1][size_t(i)] = 2.5 + 0.01 * i;
    const auto rep2 = drift_report(bad, 1e-8);
    CHECK(rep2[1].exceeds);
    CHECK(rep2[1].max_drift > 1e-4);
}

TEST_CASE("implicit midpoint conserves H with step^2 drift scaling") {
    ParamSet ps;
    ps.kappa = 0.2;
    SystemDef sys = build_system("def_a", ps);
    PhasePoint x0(Chart::cartesian, 0.8, 0.6, 0.3, -0.4);
    auto h_drift = [&](double h) {
        const TrajectoryRecord rec = integrate(sys, x0, 10.0, midpoint(h));
        REQUIRE_FALSE(rec.domain_exit);
        double worst = 0;
        const auto d = rec.drift();
        // Ja1..Ja3 all count; index 0..2
        for (double v : d) worst = std::max(worst, v);
        return worst;
    };
    const double d1 = h_drift(2e-2);
    const double d2 = h_drift(1e-2);
    const double factor = d1 / d2;
    CHECK(factor > 3.0);
    CHECK(factor < 5.0);
    CHECK(h_drift(1e-3) < 1e-6);
}

TEST_CASE("adaptive and midpoint trajectories agree at t = 10") {
    ParamSet ps;
    ps.kappa = 0.2;
    SystemDef sys = build_system("def_a", ps);
    PhasePoint x0(Chart::cartesian, 0.8, 0.6, 0.3, -0.4);
    const TrajectoryRecord ra = integrate(sys, x0, 10.0, adaptive(1e-12));
    const TrajectoryRecord rm = integrate(sys, x0, 10.0, midpoint(1e-3));
    const PhasePoint a = ra.points.back(), m = rm.points.back();
    CHECK(std::fabs(a.q1 - m.q1) < 1e-6);
    CHECK(std::fabs(a.q2 - m.q2) < 1e-6);
    CHECK(std::fabs(a.p1 - m.p1) < 1e-6);
    CHECK(std::fabs(a.p2 - m.p2) < 1e-6);
}

TEST_CASE("midpoint is time-symmetric under momentum reversal") {
    ParamSet ps;
    ps.kappa = 0.2;
    SystemDef sys = build_system("def_a", ps);
    PhasePoint x0(Chart::cartesian, 0.8, 0.6, 0.3, -0.4);
    const TrajectoryRecord fwd = integrate(sys, x0, 5.0, midpoint(1e-3, 5.0));
    REQUIRE_FALSE(fwd.domain_exit);
    PhasePoint turn = fwd.points.back();
    turn.p1 = -turn.p1;
    turn.p2 = -turn.p2;
    const TrajectoryRecord back = integrate(sys, turn, 5.0, midpoint(1e-3, 5.0));
    REQUIRE_FALSE(back.domain_exit);
    const PhasePoint end = back.points.back();
    CHECK(std::fabs(end.q1 - x0.q1) < 1e-9);
    CHECK(std::fabs(end.q2 - x0.q2) < 1e-9);
    CHECK(std::fabs(end.p1 + x0.p1) < 1e-9);
    CHECK(std::fabs(end.p2 + x0.p2) < 1e-9);
}

TEST_CASE("radial plunge into the Kepler core is truncated and flagged") {
    ParamSet ps;
    ps.kappa = 0.3;
    ps.g = 1.0;
    SystemDef sys = build_system("curved_kepler_k2", ps);
    PhasePoint x0(Chart::cartesian, 1.0, 0.0, -0.5, 0.0);  // zero angular momentum
    const TrajectoryRecord rec = integrate(sys, x0, 10.0, adaptive(1e-10, 0.01));
    CHECK(rec.domain_exit);
    CHECK(rec.t_reached < 10.0);
    CHECK(rec.times.size() >= 2);  // truncated output retained
}

TEST_CASE("integration rejects bad inputs") {
    ParamSet ps;
    ps.kappa = 0.5;
    SystemDef sys = build_system("def_c", ps);
    PhasePoint inside_core(Chart::cartesian, 0.2, 0.2, 0.0, 0.0);  // r < kappa
    CHECK_FALSE(sys.in_domain(inside_core));
    CHECK_THROWS_AS((void)integrate(sys, inside_core, 1.0, adaptive()), DomainViolation);
    PhasePoint ok(Chart::cartesian, 1.0, 0.5, 0.1, 0.1);
    CHECK_THROWS_AS((void)integrate(sys, ok, -1.0, adaptive()), InvalidParams);
    IntegratorConfig bad;
    bad.step = -1;
    bad.method = Method::implicit_midpoint;
    CHECK_THROWS_AS((void)integrate(sys, ok, 1.0, bad), InvalidParams);
}

TEST_CASE("CSV serialization shape and determinism") {
    ParamSet ps;
    ps.kappa = 0.1;
    SystemDef sys = build_system("def_a", ps);
    PhasePoint x0(Chart::cartesian, 0.8, 0.6, 0.3, -0.4);
    const TrajectoryRecord r1 = integrate(sys, x0, 1.0, adaptive(1e-10, 0.25));
    const TrajectoryRecord r2 = integrate(sys, x0, 1.0, adaptive(1e-10, 0.25));
    const std::string c1 = r1.to_csv(), c2 = r2.to_csv();
    CHECK(c1 == c2);
    CHECK(c1.substr(0, c1.find('\n')) == "t,q1,q2,p1,p2,Ja1,Ja2,Ja3");
    // floor(t_end / sample_dt) + 1 rows
    size_t rows = 0;
    for (char ch : c1) rows += ch == '\n';
    CHECK(rows == 6);  // header + 5 samples (t = 0 .. 1 step 0.25)
}
