#include <doctest.h>

#include <cmath>

#include "superint/catalog.hpp"
#include "superint/coords.hpp"
#include "superint/poisson.hpp"
#include "superint/rng.hpp"
#include "test_helpers.hpp"

using namespace superint;

TEST_CASE("parabolic (a,b)=(1,1) maps to cartesian (0,2)") {
    PhasePoint p(Chart::parabolic, 1.0, 1.0, 0.0, 0.0);
    const PhasePoint c = to_chart(p, Chart::cartesian);
    CHECK(c.q1 == doctest::Approx(0.0));
    CHECK(c.q2 == doctest::Approx(2.0));
}

TEST_CASE("cotangent pullback: (px,py)=(1,0) at (a,b)=(1,1) gives (pa,pb)=(2,-2)") {
    PhasePoint c(Chart::cartesian, 0.0, 2.0, 1.0, 0.0);  // the image of (a,b)=(1,1)
    const PhasePoint p = to_chart(c, Chart::parabolic);
    CHECK(p.q1 == doctest::Approx(1.0));
    CHECK(p.q2 == doctest::Approx(1.0));
    CHECK(p.p1 == doctest::Approx(2.0));
    CHECK(p.p2 == doctest::Approx(-2.0));
}

TEST_CASE("round trips are identity away from singular sets") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        PhasePoint c(Chart::cartesian, rng.uniform(0.2, 1.5), rng.uniform(0.2, 1.5),
                     rng.uniform(-1, 1), rng.uniform(-1, 1));
        for (Chart target : {Chart::polar, Chart::parabolic, Chart::parabolic_rotated}) {
            const PhasePoint back = to_chart(to_chart(c, target), Chart::cartesian);
            CHECK(back.q1 == doctest::Approx(c.q1).epsilon(1e-12));
            CHECK(back.q2 == doctest::Approx(c.q2).epsilon(1e-12));
            CHECK(back.p1 == doctest::Approx(c.p1).epsilon(1e-12));
            CHECK(back.p2 == doctest::Approx(c.p2).epsilon(1e-12));
        }
    }
}

// canonicity: {Q_i, P_j} = delta_ij with the bracket computed in the source
// chart through the transform functions themselves
TEST_CASE("transforms are canonical: {Q_i,P_j} = delta_ij at 1000 points") {
    auto check_chart = [](Chart target) {
        // component i of the transformed point as an observable on cartesian
        auto comp = [&](int i) {
            return make_observable("c" + std::to_string(i), Chart::cartesian, kNonPolynomial,
                                   [i, target](auto x, auto y, auto px, auto py) {
                                       using T = decltype(x);
                                       std::array<T, 4> v;
                                       switch (target) {
                                           case Chart::polar: v = cart_to_polar(x, y, px, py); break;
                                           case Chart::parabolic:
                                               v = cart_to_parabolic(x, y, px, py);
                                               break;
                                           default:
                                               v = cart_to_parabolic_rotated(x, y, px, py);
                                               break;
                                       }
                                       return v[size_t(i)];
                                   });
        };
        const Observable Q1 = comp(0), Q2 = comp(1), P1 = comp(2), P2 = comp(3);
        Rng rng(5);
        double worst = 0;
        for (int n = 0; n < 1000; ++n) {
            PhasePoint p(Chart::cartesian, rng.uniform(0.2, 1.4), rng.uniform(0.2, 1.4),
                         rng.uniform(-1, 1), rng.uniform(-1, 1));
            worst = std::max(worst, std::fabs(poisson_bracket(Q1, P1, p) - 1.0));
            worst = std::max(worst, std::fabs(poisson_bracket(Q2, P2, p) - 1.0));
            worst = std::max(worst, std::fabs(poisson_bracket(Q1, P2, p)));
            worst = std::max(worst, std::fabs(poisson_bracket(Q2, P1, p)));
            worst = std::max(worst, std::fabs(poisson_bracket(Q1, Q2, p)));
            worst = std::max(worst, std::fabs(poisson_bracket(P1, P2, p)));
        }
        return worst;
    };
    CHECK(check_chart(Chart::polar) < 1e-10);
    CHECK(check_chart(Chart::parabolic) < 1e-10);
    CHECK(check_chart(Chart::parabolic_rotated) < 1e-10);
}

TEST_CASE("Hamiltonian values are chart-invariant") {
    ParamSet ps;
    ps.kappa = 0.2;
    for (const auto& id : {std::string("def_a"), std::string("def_c"), std::string("euclid_d")}) {
        SystemDef sys = build_system(id, ps);
        const auto pts = domain_sample(sys, 99, 100);
        for (const auto& p : pts) {
            const double direct = sys.hamiltonian(p);
            for (Chart other : {Chart::polar, Chart::parabolic, Chart::parabolic_rotated}) {
                if (id == "def_c" && p.q2 < 0 && other == Chart::parabolic_rotated)
                    continue;  // rotated branch needs y > -r; keep it simple
                const PhasePoint q = to_chart(p, other);
                CHECK(evaluate_in_chart(sys.hamiltonian, q) ==
                      doctest::Approx(direct).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("transform of a singular point raises SingularTransform") {
    PhasePoint origin(Chart::cartesian, 0.0, 0.0, 0.1, 0.2);
    CHECK_THROWS_AS((void)to_chart(origin, Chart::polar), SingularTransform);
    PhasePoint neg_x(Chart::cartesian, -1.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS((void)to_chart(neg_x, Chart::parabolic), SingularTransform);
    PhasePoint neg_y(Chart::cartesian, 0.0, -1.0, 0.0, 0.0);
    CHECK_THROWS_AS((void)to_chart(neg_y, Chart::parabolic_rotated), SingularTransform);
}

TEST_CASE("chart mismatch is rejected at evaluation") {
    ParamSet ps;
    SystemDef sys = build_system("euclid_a", ps);
    PhasePoint polar(Chart::polar, 1.0, 0.3, 0.0, 0.0);
    CHECK_THROWS_AS((void)sys.hamiltonian(polar), ChartMismatch);
    CHECK(evaluate_in_chart(sys.hamiltonian, polar) ==
          doctest::Approx(sys.hamiltonian(to_chart(polar, Chart::cartesian))));
}
