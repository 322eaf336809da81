#include "superint/poisson.hpp"

#include <cmath>
#include <sstream>

#include "superint/io.hpp"
#include "superint/smallmat.hpp"

namespace superint {

namespace {
double norm4(const Grad4& g) {
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
}
}  // namespace

double poisson_bracket(const Observable& f, const Observable& g, const PhasePoint& p) {
    if (f.chart != g.chart || f.chart != p.chart)
        throw ChartMismatch("poisson_bracket: observables/point charts differ");
    const Grad4 gf = f.gradient(p), gg = g.gradient(p);
    // grouped so that swapping f,g negates each term exactly in floating point
    const double t1 = gf[0] * gg[2] - gf[2] * gg[0];
    const double t2 = gf[1] * gg[3] - gf[3] * gg[1];
    return t1 + t2;
}

BracketSample poisson_bracket_scaled(const Observable& f, const Observable& g,
                                     const PhasePoint& p) {
    if (f.chart != g.chart || f.chart != p.chart)
        throw ChartMismatch("poisson_bracket: observables/point charts differ");
    const Grad4 gf = f.gradient(p), gg = g.gradient(p);
    const double t1 = gf[0] * gg[2] - gf[2] * gg[0];
    const double t2 = gf[1] * gg[3] - gf[3] * gg[1];
    return {t1 + t2, norm4(gf) * norm4(gg) + 1e-300};
}

std::string BracketReport::to_json() const {
    std::ostringstream os;
    os << "{\"pair\":[\"" << first << "\",\"" << second << "\"],"
       << "\"points_tested\":" << points_tested << ","
       << "\"max_abs_residual\":" << fmt17(max_abs_residual) << ","
       << "\"max_scaled_residual\":" << fmt17(max_scaled_residual) << ","
       << "\"verdict\":\"" << (commutes ? "commutes" : "fails") << "\"}";
    return os.str();
}

namespace {
BracketReport report_over_points(const Observable& f, const Observable& g,
                                 const std::vector<PhasePoint>& pts, double tol) {
    BracketReport rep;
    rep.first = f.name;
    rep.second = g.name;
    rep.points_tested = int(pts.size());
    std::vector<double> absres(pts.size()), scaled(pts.size());
    parallel_for(int(pts.size()), [&](int i) {
        const BracketSample s = poisson_bracket_scaled(f, g, pts[i]);
        absres[i] = std::fabs(s.value);
        scaled[i] = std::fabs(s.value) / s.scale;
    });
    for (size_t i = 0; i < pts.size(); ++i) {
        rep.max_abs_residual = std::max(rep.max_abs_residual, absres[i]);
        rep.max_scaled_residual = std::max(rep.max_scaled_residual, scaled[i]);
    }
    rep.commutes = rep.max_scaled_residual <= tol;
    return rep;
}
}  // namespace

BracketReport bracket_report(const SystemDef& sys, const Observable& f, const Observable& g,
                             std::uint64_t seed, int n, double tol) {
    return report_over_points(f, g, domain_sample(sys, seed, n), tol);
}

std::vector<BracketReport> certify_involution(const SystemDef& sys, std::uint64_t seed, int n,
                                              double tol) {
    if (n < 1) throw InvalidParams("certify_involution: n must be >= 1");
    const auto pts = domain_sample(sys, seed, n);
    std::vector<BracketReport> out;
    for (const auto& J : sys.integrals)
        out.push_back(report_over_points(J, sys.hamiltonian, pts, tol));
    for (const auto& [a, b] : sys.involutive_pairs)
        out.push_back(report_over_points(sys.integral(a), sys.integral(b), pts, tol));
    return out;
}

int independence_rank(const std::vector<const Observable*>& obs, const PhasePoint& p,
                      double threshold) {
    if (obs.empty()) throw InvalidParams("independence_rank: no observables");
    std::vector<std::array<double, 4>> rows;
    rows.reserve(obs.size());
    for (const Observable* o : obs) rows.push_back(o->gradient(p));
    const auto sv = singular_values(rows);
    if (sv[0] == 0) return 0;
    int rank = 0;
    for (double s : sv)
        if (s / sv[0] > threshold) ++rank;
    return rank;
}

}  // namespace superint
