#include "superint/dynamics.hpp"

#include <cmath>

#include "superint/io.hpp"
#include "superint/smallmat.hpp"

namespace superint {

namespace {

using Vec4d = std::array<double, 4>;

Vec4d add(const Vec4d& a, const Vec4d& b, double s = 1.0) {
    return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]};
}

double norm_inf(const Vec4d& a) {
    return std::max(std::max(std::fabs(a[0]), std::fabs(a[1])),
                    std::max(std::fabs(a[2]), std::fabs(a[3])));
}

struct Flow {
    const SystemDef& sys;

    // Hamiltonian vector field: (dq, dp) = (dH/dp, -dH/dq)
    Vec4d operator()(const Vec4d& z) const {
        PhasePoint p(sys.chart, z[0], z[1], z[2], z[3]);
        const Grad4 g = sys.hamiltonian.gradient(p);
        return {g[2], g[3], -g[0], -g[1]};
    }

    bool in_domain(const Vec4d& z) const {
        PhasePoint p(sys.chart, z[0], z[1], z[2], z[3]);
        return std::isfinite(z[0]) && std::isfinite(z[1]) && std::isfinite(z[2]) &&
               std::isfinite(z[3]) && sys.in_domain(p);
    }

    // singular-set proximity: trajectories are truncated inside this band
    bool too_close(const Vec4d& z) const {
        PhasePoint p(sys.chart, z[0], z[1], z[2], z[3]);
        return !sys.domain_margin(p, 0.01);
    }
};

// One implicit-midpoint step: solve zm = z0 + (h/2) f(zm), return 2 zm - z0.
// Modified Newton: the Jacobian I - (h/2) Df is built once per step by
// central differences of the exact-gradient field and reused.
Vec4d midpoint_step(const Flow& f, const Vec4d& z0, double h, const IntegratorConfig& cfg) {
    const Vec4d f0 = f(z0);
    Vec4d zm = add(z0, f0, 0.5 * h);  // explicit predictor

    Mat4 J{};
    bool have_lu = true;
    {
        const double eps = 1e-7;
        for (int k = 0; k < 4; ++k) {
            Vec4d zp = zm, zn = zm;
            const double dk = eps * std::max(1.0, std::fabs(zm[k]));
            zp[k] += dk;
            zn[k] -= dk;
            Vec4d col;
            try {
                const Vec4d fp = f(zp), fn = f(zn);
                for (int i = 0; i < 4; ++i) col[i] = (fp[i] - fn[i]) / (2 * dk);
            } catch (const Error&) {
                have_lu = false;
                break;
            }
            for (int i = 0; i < 4; ++i) J[i][k] = (i == k ? 1.0 : 0.0) - 0.5 * h * col[i];
        }
    }

    for (int it = 0; it < cfg.max_newton_iters; ++it) {
        const Vec4d fm = f(zm);
        const Vec4d res = {zm[0] - z0[0] - 0.5 * h * fm[0], zm[1] - z0[1] - 0.5 * h * fm[1],
                           zm[2] - z0[2] - 0.5 * h * fm[2], zm[3] - z0[3] - 0.5 * h * fm[3]};
        const double rn = norm_inf(res);
        if (rn <= cfg.newton_tol * std::max(1.0, norm_inf(zm))) {
            return {2 * zm[0] - z0[0], 2 * zm[1] - z0[1], 2 * zm[2] - z0[2], 2 * zm[3] - z0[3]};
        }
        Vec4d dz{};
        if (have_lu && solve4(J, res, dz)) {
            zm = add(zm, dz, -1.0);
        } else {
            // fixed-point fallback when the Newton matrix is unusable
            zm = add(z0, fm, 0.5 * h);
        }
    }
    throw NewtonDivergence("implicit midpoint: Newton did not converge");
}

// Dormand-Prince 5(4) coefficients.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

struct DpResult {
    Vec4d y;
    double err;  // scaled error estimate
};

DpResult dp54_step(const Flow& f, const Vec4d& y, const Vec4d& k1, double h,
                   const IntegratorConfig& cfg, Vec4d& k7_out) {
    const Vec4d k2 = f(add(y, k1, h * A21));
    const Vec4d k3 = f(add(add(y, k1, h * A31), k2, h * A32));
    const Vec4d k4 = f(add(add(add(y, k1, h * A41), k2, h * A42), k3, h * A43));
    const Vec4d k5 =
        f(add(add(add(add(y, k1, h * A51), k2, h * A52), k3, h * A53), k4, h * A54));
    const Vec4d k6 = f(add(
        add(add(add(add(y, k1, h * A61), k2, h * A62), k3, h * A63), k4, h * A64), k5, h * A65));
    Vec4d y5;
    for (int i = 0; i < 4; ++i)
        y5[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    const Vec4d k7 = f(y5);  // FSAL
    k7_out = k7;
    double err = 0;
    for (int i = 0; i < 4; ++i) {
        const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                              E7 * k7[i]);
        const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
        err += (e / sc) * (e / sc);
    }
    return {y5, std::sqrt(err / 4.0)};
}

}  // namespace

std::vector<double> TrajectoryRecord::drift() const {
    std::vector<double> out(integral_values.size(), 0.0);
    for (size_t j = 0; j < integral_values.size(); ++j) {
        const auto& s = integral_values[j];
        if (s.empty()) continue;
        const double ref = std::max(std::fabs(s[0]), 1.0);
        double m = 0;
        for (double v : s) m = std::max(m, std::fabs(v - s[0]));
        out[j] = m / ref;
    }
    return out;
}

std::string TrajectoryRecord::to_csv() const {
    std::string out = "t,q1,q2,p1,p2";
    for (const auto& n : integral_names) out += "," + n;
    out += '\n';
    for (size_t i = 0; i < times.size(); ++i) {
        std::vector<std::string> cells{fmt17(times[i]), fmt17(points[i].q1), fmt17(points[i].q2),
                                       fmt17(points[i].p1), fmt17(points[i].p2)};
        for (const auto& s : integral_values) cells.push_back(fmt17(s[i]));
        out += csv_row(cells);
    }
    return out;
}

std::vector<DriftSummary> drift_report(const TrajectoryRecord& traj, double tol) {
    if (traj.times.empty()) throw InvalidParams("drift_report: empty trajectory");
    std::vector<DriftSummary> out;
    for (size_t j = 0; j < traj.integral_values.size(); ++j) {
        const auto& s = traj.integral_values[j];
        const double ref = std::max(std::fabs(s[0]), 1.0);
        DriftSummary d;
        d.name = traj.integral_names[j];
        double sum = 0;
        for (double v : s) {
            const double dv = std::fabs(v - s[0]) / ref;
            d.max_drift = std::max(d.max_drift, dv);
            sum += dv;
        }
        d.mean_drift = sum / double(s.size());
        d.exceeds = d.max_drift > tol;
        out.push_back(d);
    }
    return out;
}

TrajectoryRecord integrate(const SystemDef& sys, const PhasePoint& x0, double t_end,
                           const IntegratorConfig& cfg) {
    cfg.validate();
    if (t_end <= 0) throw InvalidParams("integrate: t_end must be > 0");
    x0.validate();
    if (x0.chart != sys.chart) throw ChartMismatch("integrate: x0 chart != system chart");
    if (!sys.in_domain(x0)) throw DomainViolation("integrate: x0 outside the system domain");

    const Flow flow{sys};
    TrajectoryRecord rec;
    for (const auto& J : sys.integrals) rec.integral_names.push_back(J.name);
    rec.integral_values.resize(sys.integrals.size());

    auto record_sample = [&](double t, const Vec4d& z) {
        PhasePoint p(sys.chart, z[0], z[1], z[2], z[3]);
        rec.times.push_back(t);
        rec.points.push_back(p);
        for (size_t j = 0; j < sys.integrals.size(); ++j)
            rec.integral_values[j].push_back(sys.integrals[j](p));
        rec.t_reached = t;
    };

    Vec4d z = x0.coords();
    record_sample(0.0, z);
    const long n_samples = long(std::floor(t_end / cfg.sample_dt + 1e-9));

    try {
        if (cfg.method == Method::implicit_midpoint) {
            // integer steps per sampling interval keeps the step uniform
            const long per = std::max(1L, std::lround(cfg.sample_dt / cfg.step));
            const double h = cfg.sample_dt / double(per);
            for (long s = 1; s <= n_samples; ++s) {
                for (long i = 0; i < per; ++i) {
                    if (flow.too_close(z)) throw DomainViolation("near singular set");
                    z = midpoint_step(flow, z, h, cfg);
                    if (!flow.in_domain(z)) throw DomainViolation("left domain");
                }
                record_sample(double(s) * cfg.sample_dt, z);
            }
        } else {
            double h = cfg.sample_dt / 16.0;
            Vec4d k1 = flow(z);
            for (long s = 1; s <= n_samples; ++s) {
                const double t_target = double(s) * cfg.sample_dt;
                double t = double(s - 1) * cfg.sample_dt;
                while (t < t_target - 1e-14 * t_target) {
                    if (flow.too_close(z)) throw DomainViolation("near singular set");
                    bool clipped = false;
                    double hs = h;
                    if (t + hs > t_target) {
                        hs = t_target - t;
                        clipped = true;
                    }
                    Vec4d k7;
                    const DpResult r = dp54_step(flow, z, k1, hs, cfg, k7);
                    if (r.err <= 1.0) {
                        z = r.y;
                        k1 = k7;
                        t += hs;
                        if (!flow.in_domain(z)) throw DomainViolation("left domain");
                    }
                    const double fac =
                        std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(r.err, 1e-16), -0.2)));
                    if (!clipped || r.err > 1.0) h = hs * fac;
                }
                record_sample(t_target, z);
            }
        }
    } catch (const DomainViolation&) {
        rec.domain_exit = true;  // truncated record retained
    } catch (const DerivativeSingular&) {
        rec.domain_exit = true;
    }
    return rec;
}

}  // namespace superint
