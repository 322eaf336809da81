#include "superint/certify.hpp"

#include <cmath>
#include <sstream>

#include "superint/io.hpp"

namespace superint {

RankSweep rank_sweep(const SystemDef& sys, std::uint64_t seed, int n, double threshold,
                     double required_fraction) {
    RankSweep out;
    out.names = sys.rank_triple;
    out.expected_rank = int(sys.rank_triple.size());
    out.points_tested = n;
    std::vector<const Observable*> obs;
    for (const auto& name : sys.rank_triple) obs.push_back(&sys.integral(name));
    const auto pts = domain_sample(sys, seed, n);
    std::vector<char> ok(pts.size(), 0);
    parallel_for(int(pts.size()), [&](int i) {
        ok[i] = independence_rank(obs, pts[i], threshold) == out.expected_rank;
    });
    int hits = 0;
    for (char c : ok) hits += c;
    out.pass_fraction = double(hits) / double(n);
    out.pass = out.pass_fraction >= required_fraction;
    return out;
}

double loglog_slope(const std::vector<double>& kappas, const std::vector<double>& devs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = int(kappas.size());
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(kappas[i]), ly = std::log(std::max(devs[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<KappaRow> kappa_sweep(const std::string& id, const ParamSet& base,
                                  const std::vector<double>& kappas, std::uint64_t seed, int n) {
    ParamSet p0 = base;
    p0.kappa = 0.0;
    SystemDef limit = build_system(id, p0);
    if (limit.euclidean_limit_id.empty())
        throw NoEuclideanLimit("system '" + id + "' has no Euclidean limit");

    // fixed points sampled from the most restrictive member of the family
    double kap_max = 0.0;
    for (double k : kappas) kap_max = std::max(kap_max, k);
    ParamSet pmax = base;
    pmax.kappa = kap_max;
    const auto pts = domain_sample(build_system(id, pmax), seed, n);

    std::vector<KappaRow> rows;
    for (const auto& J : limit.integrals) {
        KappaRow r;
        r.name = J.name;
        rows.push_back(r);
    }
    for (double kap : kappas) {
        ParamSet pk = base;
        pk.kappa = kap;
        SystemDef sysk = build_system(id, pk);
        for (size_t j = 0; j < limit.integrals.size(); ++j) {
            double dev = 0;
            for (const auto& pt : pts)
                dev = std::max(dev,
                               std::fabs(sysk.integrals[j](pt) - limit.integrals[j](pt)));
            rows[j].deviations.push_back(dev);
        }
    }
    for (auto& r : rows) {
        r.exact_zero = true;
        for (double d : r.deviations) r.exact_zero = r.exact_zero && d <= 1e-14;
        if (!r.exact_zero) r.slope = loglog_slope(kappas, r.deviations);
    }
    return rows;
}

std::string CertifyResult::to_json() const {
    std::ostringstream os;
    os << "{\"system\":\"" << system_id << "\",\"brackets\":[";
    for (size_t i = 0; i < brackets.size(); ++i) os << (i ? "," : "") << brackets[i].to_json();
    os << "],\"independence\":{\"names\":[";
    for (size_t i = 0; i < rank.names.size(); ++i)
        os << (i ? "," : "") << '"' << rank.names[i] << '"';
    os << "],\"expected_rank\":" << rank.expected_rank
       << ",\"points_tested\":" << rank.points_tested
       << ",\"pass_fraction\":" << fmt17(rank.pass_fraction)
       << ",\"pass\":" << (rank.pass ? "true" : "false") << "}";
    if (!kappa_rows.empty()) {
        os << ",\"kappa_limit\":[";
        for (size_t i = 0; i < kappa_rows.size(); ++i) {
            const auto& r = kappa_rows[i];
            os << (i ? "," : "") << "{\"integral\":\"" << r.name << "\",\"deviations\":[";
            for (size_t j = 0; j < r.deviations.size(); ++j)
                os << (j ? "," : "") << fmt17(r.deviations[j]);
            os << "],\"exact_zero\":" << (r.exact_zero ? "true" : "false");
            if (!r.exact_zero) os << ",\"slope\":" << fmt17(r.slope);
            os << "}";
        }
        os << "]";
    }
    os << ",\"pass\":" << (pass ? "true" : "false") << "}";
    return os.str();
}

CertifyResult certify_system(const std::string& id, const ParamSet& params, std::uint64_t seed,
                             int n, double tol, bool with_kappa_sweep) {
    CertifyResult out;
    out.system_id = id;
    SystemDef sys = build_system(id, params);
    out.brackets = certify_involution(sys, seed, n, tol);
    out.rank = rank_sweep(sys, seed + 1, n);
    bool ok = out.rank.pass;
    for (const auto& b : out.brackets) ok = ok && b.commutes;
    if (with_kappa_sweep && !sys.euclidean_limit_id.empty() && params.kappa != 0.0) {
        out.kappa_rows = kappa_sweep(id, params, {1e-2, 1e-3, 1e-4}, seed + 2, 50);
        for (const auto& r : out.kappa_rows)
            if (!r.exact_zero)
                ok = ok && r.slope >= out.kappa_slope_lo && r.slope <= out.kappa_slope_hi;
    }
    out.pass = ok;
    return out;
}

}  // namespace superint
