#include <doctest.h>

#include <cmath>

#include "superint/catalog.hpp"
#include "superint/coords.hpp"
#include "superint/poisson.hpp"
#include "test_helpers.hpp"

using namespace superint;
using superint::testing::fd_gradient;

namespace {
ParamSet params(double kappa = 0.0, double alpha = 1.0, double k2 = 1.0, double k3 = 1.0) {
    ParamSet ps;
    ps.kappa = kappa;
    ps.alpha = alpha;
    ps.k2 = k2;
    ps.k3 = k3;
    return ps;
}
}  // namespace

TEST_CASE("deformed oscillator Hamiltonian values at pinned points") {
    // flat limit: H = r^2/2 at rest
    SystemDef flat = build_system("def_a", params(0.0, 1.0, 0.0, 0.0));
    PhasePoint p(Chart::cartesian, 1.0, 1.0, 0.0, 0.0);
    CHECK(flat.hamiltonian(p) == doctest::Approx(1.0).epsilon(1e-14));
    // kappa = 1/4: (r^2/2)/(1 - r^2/4) = 1/(1 - 1/2) = 2
    SystemDef curved = build_system("def_a", params(0.25, 1.0, 0.0, 0.0));
    CHECK(curved.hamiltonian(p) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("Ja3 with zero couplings is the squared angular momentum") {
    SystemDef sys = build_system("def_a", params(0.0, 1.0, 0.0, 0.0));
    PhasePoint p(Chart::cartesian, 1.0, 0.0, 0.0, 2.0);
    CHECK(sys.integral("Ja3")(p) == doctest::Approx(4.0).epsilon(1e-14));
    // d(L^2)/dp_y = 2 L x = 4
    CHECK(sys.integral("Ja3").gradient(p)[3] == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("free particle gradient is (0,0,px,py)") {
    ParamSet ps = params(0.0, 0.0, 0.0, 0.0);
    SystemDef sys = build_system("euclid_a", ps);
    PhasePoint p(Chart::cartesian, 0.7, -0.4, 3.0, 4.0);
    const Grad4 g = sys.hamiltonian.gradient(p);
    CHECK(g[0] == doctest::Approx(0.0));
    CHECK(g[1] == doctest::Approx(0.0));
    CHECK(g[2] == doctest::Approx(3.0));
    CHECK(g[3] == doctest::Approx(4.0));
}

TEST_CASE("deformed Hamiltonian gradient agrees with the difference oracle") {
    // d/dx [r^2/2/(1-r^2/4)] at (1,1) is x/(1-kappa r^2)^2 = 4
    SystemDef sys = build_system("def_a", params(0.25, 1.0, 0.0, 0.0));
    PhasePoint p(Chart::cartesian, 1.0, 1.0, 0.0, 0.0);
    const Grad4 fd = fd_gradient(sys.hamiltonian, p);
    const Grad4 exact = sys.hamiltonian.gradient(p);
    CHECK(exact[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(exact[0] == doctest::Approx(fd[0]).epsilon(1e-6));
}

TEST_CASE("catalog integral lists and names") {
    SystemDef a = build_system("def_a", params(0.1));
    REQUIRE(a.integrals.size() == 3);
    CHECK(a.integrals[0].name == "Ja1");
    CHECK(a.integrals[1].name == "Ja2");
    CHECK(a.integrals[2].name == "Ja3");

    ParamSet ps;
    ps.kappa = 0.2;
    SystemDef pw = build_system("pw_def", ps);
    REQUIRE(pw.integrals.size() == 4);
    CHECK(pw.integrals[0].name == "J1");
    CHECK(pw.integrals[1].name == "J2");
    CHECK(pw.integrals[2].name == "ReK");
    CHECK(pw.integrals[3].name == "ImK");

    CHECK_THROWS_AS((void)build_system("no_such_system", ParamSet{}), UnknownSystem);
    ParamSet bad;
    bad.m_den = 0;
    CHECK_THROWS_AS((void)build_system("ttw_def", bad), InvalidParams);
    ParamSet huge;
    huge.kappa = -1e300;
    CHECK_THROWS_AS((void)build_system("def_a", huge), InvalidParams);
}

TEST_CASE("Hamiltonian is reproducible from the integral list") {
    for (const auto& [id, pair] :
         {std::pair<std::string, std::pair<std::string, std::string>>{"def_a", {"Ja1", "Ja2"}},
          {"def_b", {"Jb1", "Jb2"}},
          {"euclid_a", {"Ia1", "Ia2"}},
          {"euclid_b", {"Ib1", "Ib2"}}}) {
        ParamSet ps = params(id[0] == 'd' ? 0.15 : 0.0);
        SystemDef sys = build_system(id, ps);
        for (const auto& p : domain_sample(sys, 3, 50)) {
            const double h = sys.hamiltonian(p);
            const double sum = 0.5 * (sys.integral(pair.first)(p) + sys.integral(pair.second)(p));
            CHECK(h == doctest::Approx(sum).epsilon(1e-12));
        }
    }
    // ttw: H = J1/2 ; curved_osc_h1: H = (Fxx + Fyy + kappa Lsq)/2
    ParamSet ps;
    ps.kappa = 0.2;
    SystemDef ttw = build_system("ttw_def", ps);
    for (const auto& p : domain_sample(ttw, 4, 50))
        CHECK(ttw.hamiltonian(p) == doctest::Approx(0.5 * ttw.integral("J1")(p)).epsilon(1e-14));
    SystemDef h1 = build_system("curved_osc_h1", ps);
    for (const auto& p : domain_sample(h1, 5, 50)) {
        const double rhs = 0.5 * (h1.integral("Fxx")(p) + h1.integral("Fyy")(p) +
                                  ps.kappa * h1.integral("Lsq")(p));
        CHECK(h1.hamiltonian(p) == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("deformed systems at kappa = 0 coincide with the flat systems") {
    const std::pair<std::string, std::string> ids[] = {
        {"def_a", "euclid_a"}, {"def_b", "euclid_b"}, {"def_c", "euclid_c"}, {"def_d", "euclid_d"}};
    for (const auto& [did, eid] : ids) {
        ParamSet ps = params(0.0);
        ps.k1 = -0.8;  // attractive flavor for the Kepler family
        SystemDef d = build_system(did, ps), e = build_system(eid, ps);
        CHECK(d.euclidean_limit_id == eid);
        const size_t n = std::min(d.integrals.size(), e.integrals.size());
        for (const auto& p : domain_sample(d, 21, 60)) {
            CHECK(d.hamiltonian(p) == doctest::Approx(e.hamiltonian(p)).epsilon(1e-12));
            for (size_t j = 0; j < n; ++j)
                CHECK(d.integrals[j](p) ==
                      doctest::Approx(e.integrals[j](p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("parabolic separation constants combine into the printed integrals") {
    ParamSet ps = params(0.2);
    ps.k1 = 0.7;
    ps.k2 = 0.6;
    ps.k3 = 0.5;
    SystemDef c = build_system("def_c", ps);
    for (const auto& p : domain_sample(c, 31, 80)) {
        const double H = c.hamiltonian(p);
        const double jc3 = c.integral("Jc3")(p);
        CHECK(jc3 == doctest::Approx(c.integral("Jc3a")(p) + ps.kappa * H).epsilon(1e-11));
        CHECK(jc3 == doctest::Approx(c.integral("Jc3b")(p) - ps.kappa * H).epsilon(1e-11));
    }
    SystemDef d = build_system("def_d", ps);
    for (const auto& p : domain_sample(d, 32, 80)) {
        const double H = d.hamiltonian(p);
        CHECK(d.integral("Jd2")(p) ==
              doctest::Approx(d.integral("Jd2a")(p) + ps.kappa * H).epsilon(1e-11));
        CHECK(d.integral("Jd2")(p) ==
              doctest::Approx(d.integral("Jd2b")(p) - ps.kappa * H).epsilon(1e-11));
        CHECK(d.integral("Jd3")(p) ==
              doctest::Approx(d.integral("Jd3a")(p) + ps.kappa * H).epsilon(1e-11));
        CHECK(d.integral("Jd3")(p) ==
              doctest::Approx(d.integral("Jd3b")(p) - ps.kappa * H).epsilon(1e-11));
    }
}

TEST_CASE("ttw at m=1 matches def_a under ka=2k2, kb=2k3") {
    ParamSet tp;
    tp.kappa = 0.15;
    tp.alpha = 1.1;
    tp.ka = 1.2;  // = 2 k2
    tp.kb = 0.8;  // = 2 k3
    tp.m_num = 1;
    tp.m_den = 1;
    SystemDef ttw = build_system("ttw_def", tp);
    ParamSet ap = params(0.15, 1.1, 0.6, 0.4);
    SystemDef defa = build_system("def_a", ap);
    for (const auto& p : domain_sample(ttw, 41, 100)) {
        const PhasePoint c = to_chart(p, Chart::cartesian);
        CHECK(ttw.hamiltonian(p) == doctest::Approx(defa.hamiltonian(c)).epsilon(1e-12));
    }
}

TEST_CASE("pw at m=1/2 matches def_c under k1=-g, k2=2(ka+kb), k3=2(kb-ka)") {
    ParamSet pp;
    pp.kappa = 0.12;
    pp.g = 0.9;
    pp.ka = 0.6;
    pp.kb = 0.4;
    pp.m_num = 1;
    pp.m_den = 2;
    SystemDef pw = build_system("pw_def", pp);
    ParamSet cp;
    cp.kappa = 0.12;
    cp.k1 = -0.9;
    cp.k2 = 2.0 * (0.6 + 0.4);
    cp.k3 = 2.0 * (0.4 - 0.6);
    SystemDef defc = build_system("def_c", cp);
    for (const auto& p : domain_sample(pw, 42, 100)) {
        const PhasePoint c = to_chart(p, Chart::cartesian);
        CHECK(pw.hamiltonian(p) == doctest::Approx(defc.hamiltonian(c)).epsilon(1e-12));
    }
}

TEST_CASE("domain sampling honors the stated margins and is deterministic") {
    SystemDef a = build_system("def_a", params(1.0));
    for (const auto& p : domain_sample(a, 7, 200))
        CHECK(p.q1 * p.q1 + p.q2 * p.q2 <= doctest::Approx(0.95));

    ParamSet cp;
    cp.kappa = 0.5;
    SystemDef c = build_system("def_c", cp);
    for (const auto& p : domain_sample(c, 8, 200))
        CHECK(std::hypot(p.q1, p.q2) >= doctest::Approx(0.55));

    const auto s1 = domain_sample(a, 123, 50), s2 = domain_sample(a, 123, 50);
    REQUIRE(s1.size() == s2.size());
    for (size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].q1 == s2[i].q1);
        CHECK(s1[i].q2 == s2[i].q2);
        CHECK(s1[i].p1 == s2[i].p1);
        CHECK(s1[i].p2 == s2[i].p2);
    }
}

TEST_CASE("sampling fails cleanly when the domain box is empty") {
    SystemDef tight = build_system("def_a", params(900.0));  // disc of radius ~0.033
    CHECK_THROWS_AS((void)domain_sample(tight, 1, 10), SamplingFailed);
}

TEST_CASE("generic polar constructor reproduces the catalog systems") {
    // A = r^2, B = 0, kappa = 0: isotropic oscillator, J = p_phi^2
    auto A = make_onevar([](auto r) { return r * r; });
    auto B0 = make_onevar([](auto phi) { return 0.0 * phi; });
    SystemDef iso = generic_polar_system(A, B0, 0.0, 1.0);
    PhasePoint p(Chart::polar, 0.8, 0.5, 0.3, 0.7);
    CHECK(iso.hamiltonian(p) ==
          doctest::Approx(0.5 * (0.09 + 0.49 / 0.64) + 0.5 * 0.64).epsilon(1e-13));
    CHECK(iso.integral("J")(p) == doctest::Approx(0.49).epsilon(1e-13));

    // A = r^2, B = F_m: the rational-m oscillator deformation, pointwise
    ParamSet tp;
    tp.kappa = 0.2;
    tp.ka = 0.6;
    tp.kb = 0.4;
    tp.m_num = 3;
    tp.m_den = 2;
    const double ka = tp.ka, kb = tp.kb, m = tp.m();
    auto Fm = make_onevar([ka, kb, m](auto phi) {
        auto c = cos(m * phi), s = sin(m * phi);
        return ka / (c * c) + kb / (s * s);
    });
    SystemDef gen = generic_polar_system(A, Fm, tp.kappa, tp.alpha);
    SystemDef ttw = build_system("ttw_def", tp);
    for (const auto& q : domain_sample(ttw, 51, 100))
        CHECK(gen.hamiltonian(q) == doctest::Approx(ttw.hamiltonian(q)).epsilon(1e-12));

    // free motion on the curved background: {J, H} = 0 numerically
    auto Z = make_onevar([](auto r) { return 0.0 * r; });
    SystemDef free_sys = generic_polar_system(Z, B0, 0.3, 1.0);
    for (const auto& q : domain_sample(free_sys, 52, 100)) {
        const double b = poisson_bracket(free_sys.integral("J"), free_sys.hamiltonian, q);
        CHECK(std::fabs(b) < 1e-12);
    }
}

TEST_CASE("1-D oscillators expose H only and ignore the inert pair") {
    ParamSet ps;
    ps.kappa = 0.3;
    for (const auto& id : {std::string("osc1d_h1"), std::string("osc1d_h2")}) {
        SystemDef sys = build_system(id, ps);
        REQUIRE(sys.integrals.size() == 1);
        PhasePoint p(Chart::cartesian, 0.5, 0.0, 0.4, 0.0);
        PhasePoint q(Chart::cartesian, 0.5, 9.0, 0.4, -3.0);
        CHECK(sys.hamiltonian(p) == sys.hamiltonian(q));
    }
    // the two kinetic structures differ away from kappa = 0
    SystemDef h1 = build_system("osc1d_h1", ps), h2 = build_system("osc1d_h2", ps);
    PhasePoint p(Chart::cartesian, 0.5, 0.0, 1.0, 0.0);
    CHECK(h1.hamiltonian(p) != doctest::Approx(h2.hamiltonian(p)));
}
