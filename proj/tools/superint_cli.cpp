// superint: catalog browser, certification runner, trajectory integrator,
// kappa sweeps and potential profiles.  Exit codes: 0 success, 1 certification
// failure, 2 config/parameter error, 3 domain exit during integration.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "superint/catalog.hpp"
#include "superint/certify.hpp"
#include "superint/coords.hpp"
#include "superint/dynamics.hpp"
#include "superint/io.hpp"

using nlohmann::json;
using namespace superint;

namespace {

struct RunConfig {
    std::string command;
    std::string system_id;
    ParamSet params;
    std::uint64_t seed = 1;
    int n_points = 500;
    double t_end = 10.0;
    double tol = 1e-10;
    std::string out_path;
    std::string format = "csv";
    // simulate
    std::string x0_str;
    std::string chart_str;
    std::string method = "adaptive";
    double step = 1e-3;
    double rel_tol = 1e-11;
    double abs_tol = 1e-11;
    double sample_dt = 0.1;
    // potential profile
    double x_min = -2.0, x_max = 2.0;
    int profile_n = 201;
    // kappa sweep
    std::vector<double> kappas{1e-2, 1e-3, 1e-4};
};

void apply_param(ParamSet& ps, const std::string& key, const std::string& value) {
    auto as_double = [&]() {
        try {
            size_t pos = 0;
            const double v = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
            return v;
        } catch (const std::exception&) {
            throw InvalidParams("parameter '" + key + "': bad numeric value '" + value + "'");
        }
    };
    if (key == "kappa") ps.kappa = as_double();
    else if (key == "alpha") ps.alpha = as_double();
    else if (key == "g") ps.g = as_double();
    else if (key == "k1") ps.k1 = as_double();
    else if (key == "k2") ps.k2 = as_double();
    else if (key == "k3") ps.k3 = as_double();
    else if (key == "ka") ps.ka = as_double();
    else if (key == "kb") ps.kb = as_double();
    else if (key == "m") {
        const auto slash = value.find('/');
        try {
            if (slash == std::string::npos) {
                ps.m_num = std::stol(value);
                ps.m_den = 1;
            } else {
                ps.m_num = std::stol(value.substr(0, slash));
                ps.m_den = std::stol(value.substr(slash + 1));
            }
        } catch (const std::exception&) {
            throw InvalidParams("m: expected integer or p/q, got '" + value + "'");
        }
        ps.reduce_m();
    } else {
        throw InvalidParams("unknown parameter '" + key + "'");
    }
}

void apply_kv_list(ParamSet& ps, const std::vector<std::string>& kvs) {
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidParams("--param expects key=value, got '" + kv + "'");
        apply_param(ps, kv.substr(0, eq), kv.substr(eq + 1));
    }
}

// JSON config file overrides flag values
void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParams("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidParams(std::string("config parse error: ") + e.what());
    }
    if (j.contains("system")) cfg.system_id = j["system"].get<std::string>();
    if (j.contains("params"))
        for (auto& [k, v] : j["params"].items())
            apply_param(cfg.params, k,
                        v.is_string() ? v.get<std::string>() : json(v).dump());
    if (j.contains("m")) apply_param(cfg.params, "m", j["m"].get<std::string>());
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("n")) cfg.n_points = j["n"].get<int>();
    if (j.contains("t_end")) cfg.t_end = j["t_end"].get<double>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("x0")) cfg.x0_str = j["x0"].get<std::string>();
    if (j.contains("chart")) cfg.chart_str = j["chart"].get<std::string>();
    if (j.contains("method")) cfg.method = j["method"].get<std::string>();
    if (j.contains("step")) cfg.step = j["step"].get<double>();
    if (j.contains("sample_dt")) cfg.sample_dt = j["sample_dt"].get<double>();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParams("cannot write to '" + path + "'");
    out << text;
}

int cmd_list() {
    std::printf("%-18s %-26s %-34s %s\n", "id", "parameters", "integrals", "description");
    for (const auto& id : system_ids()) {
        SystemDef sys = build_system(id, ParamSet{});
        std::string pnames, inames;
        for (const auto& p : sys.param_names) pnames += (pnames.empty() ? "" : ",") + p;
        for (const auto& J : sys.integrals) inames += (inames.empty() ? "" : ",") + J.name;
        std::printf("%-18s %-26s %-34s %s\n", id.c_str(), pnames.c_str(), inames.c_str(),
                    sys.description.c_str());
    }
    return 0;
}

int cmd_certify(const RunConfig& cfg) {
    if (cfg.system_id.empty()) throw InvalidParams("certify: --system is required");
    CertifyResult res = certify_system(cfg.system_id, cfg.params, cfg.seed, cfg.n_points, cfg.tol);
    write_text(cfg.out_path, res.to_json() + "\n");
    if (!cfg.out_path.empty())
        std::cout << "certify " << res.system_id << ": " << (res.pass ? "pass" : "FAIL") << "\n";
    return res.pass ? 0 : 1;
}

PhasePoint parse_x0(const RunConfig& cfg, const SystemDef& sys) {
    if (cfg.x0_str.empty()) throw InvalidParams("simulate: --x0 q1,q2,p1,p2 is required");
    std::array<double, 4> v{};
    std::stringstream ss(cfg.x0_str);
    std::string cell;
    for (int i = 0; i < 4; ++i) {
        if (!std::getline(ss, cell, ',')) throw InvalidParams("--x0 needs 4 comma-separated numbers");
        try {
            v[i] = std::stod(cell);
        } catch (const std::exception&) {
            throw InvalidParams("--x0: bad number '" + cell + "'");
        }
    }
    const Chart chart = cfg.chart_str.empty() ? sys.chart : chart_from_name(cfg.chart_str);
    PhasePoint p(chart, v[0], v[1], v[2], v[3]);
    p.validate();
    return p.chart == sys.chart ? p : to_chart(p, sys.chart);
}

int cmd_simulate(const RunConfig& cfg) {
    if (cfg.system_id.empty()) throw InvalidParams("simulate: --system is required");
    SystemDef sys = build_system(cfg.system_id, cfg.params);
    PhasePoint x0 = parse_x0(cfg, sys);
    if (!sys.in_domain(x0)) throw InvalidParams("simulate: initial point outside domain");

    IntegratorConfig icfg;
    if (cfg.method == "midpoint") icfg.method = Method::implicit_midpoint;
    else if (cfg.method == "adaptive") icfg.method = Method::adaptive_rk;
    else throw InvalidParams("simulate: --method must be midpoint or adaptive");
    icfg.step = cfg.step;
    icfg.rel_tol = cfg.rel_tol;
    icfg.abs_tol = cfg.abs_tol;
    icfg.sample_dt = cfg.sample_dt;

    TrajectoryRecord rec = integrate(sys, x0, cfg.t_end, icfg);
    write_text(cfg.out_path, rec.to_csv());

    json summary;
    summary["system"] = cfg.system_id;
    summary["samples"] = rec.times.size();
    summary["t_reached"] = rec.t_reached;
    summary["domain_exit"] = rec.domain_exit;
    json drift = json::object();
    const auto d = rec.drift();
    for (size_t j = 0; j < d.size(); ++j) drift[rec.integral_names[j]] = d[j];
    summary["drift"] = drift;
    (cfg.out_path.empty() ? std::cerr : std::cout) << summary.dump() << "\n";
    return rec.domain_exit ? 3 : 0;
}

int cmd_potential_profile(const RunConfig& cfg) {
    // V(x) = alpha^2 x^2 / (2 (1 - kappa x^2)), clipped to |x| < 1/sqrt(kappa)
    const double kap = cfg.params.kappa, a2 = sq(cfg.params.alpha);
    if (cfg.profile_n < 2) throw InvalidParams("potential-profile: need n >= 2");
    double lo = cfg.x_min, hi = cfg.x_max;
    if (kap > 0) {
        const double bound = (1.0 - 1e-9) / std::sqrt(kap);
        lo = std::max(lo, -bound);
        hi = std::min(hi, bound);
    }
    if (!(hi > lo)) throw InvalidParams("potential-profile: empty x-range after clipping");
    std::string csv = "x,V\n";
    for (int i = 0; i < cfg.profile_n; ++i) {
        const double x = lo + (hi - lo) * double(i) / double(cfg.profile_n - 1);
        const double V = 0.5 * a2 * x * x / (1.0 - kap * x * x);
        csv += csv_row({fmt17(x), fmt17(V)});
    }
    write_text(cfg.out_path, csv);
    return 0;
}

int cmd_kappa_sweep(const RunConfig& cfg) {
    if (cfg.system_id.empty()) throw InvalidParams("kappa-sweep: --system is required");
    for (double k : cfg.kappas)
        if (!(k > 0)) throw InvalidParams("kappa-sweep: kappas must be > 0");
    const auto rows = kappa_sweep(cfg.system_id, cfg.params, cfg.kappas, cfg.seed,
                                  std::min(cfg.n_points, 50));
    std::string csv = "kappa";
    for (const auto& r : rows) csv += "," + r.name;
    csv += "\n";
    for (size_t j = 0; j < cfg.kappas.size(); ++j) {
        std::vector<std::string> cells{fmt17(cfg.kappas[j])};
        for (const auto& r : rows) cells.push_back(fmt17(r.deviations[j]));
        csv += csv_row(cells);
    }
    write_text(cfg.out_path, csv);
    json slopes = json::object();
    for (const auto& r : rows)
        slopes[r.name] = r.exact_zero ? json("exact_zero") : json(r.slope);
    (cfg.out_path.empty() ? std::cerr : std::cout) << slopes.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"superintegrable-systems catalog and certification tool"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> kv_params;
    std::string m_str, config_path;
    std::vector<std::string> tol_kv;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--system", cfg.system_id, "system id (see `list`)");
        sub->add_option("--param", kv_params, "parameter as key=value (repeatable)");
        sub->add_option("--m", m_str, "rational angular frequency p/q");
        sub->add_option("--kappa", cfg.params.kappa, "deformation parameter");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--n", cfg.n_points, "number of sample points");
        sub->add_option("--tol", tol_kv, "tolerance as key=value (bracket=..)");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json");
        sub->add_option("--config", config_path, "JSON config file (overrides flags)");
    };

    auto* list_cmd = app.add_subcommand("list", "list the system catalog");
    auto* certify_cmd = app.add_subcommand("certify", "run bracket/rank/limit certification");
    add_common(certify_cmd);
    auto* sim_cmd = app.add_subcommand("simulate", "integrate a trajectory");
    add_common(sim_cmd);
    sim_cmd->add_option("--x0", cfg.x0_str, "initial point q1,q2,p1,p2");
    sim_cmd->add_option("--chart", cfg.chart_str, "chart of --x0 (default: system chart)");
    sim_cmd->add_option("--t-end", cfg.t_end, "integration time");
    sim_cmd->add_option("--method", cfg.method, "midpoint or adaptive");
    sim_cmd->add_option("--step", cfg.step, "midpoint step size");
    sim_cmd->add_option("--rel-tol", cfg.rel_tol, "adaptive relative tolerance");
    sim_cmd->add_option("--abs-tol", cfg.abs_tol, "adaptive absolute tolerance");
    sim_cmd->add_option("--sample-dt", cfg.sample_dt, "output sampling interval");
    auto* prof_cmd = app.add_subcommand("potential-profile", "1-D deformed oscillator potential");
    add_common(prof_cmd);
    prof_cmd->add_option("--x-min", cfg.x_min, "profile range start");
    prof_cmd->add_option("--x-max", cfg.x_max, "profile range end");
    prof_cmd->add_option("--profile-n", cfg.profile_n, "number of profile samples");
    auto* sweep_cmd = app.add_subcommand("kappa-sweep", "deviation from the kappa=0 limit");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--kappas", cfg.kappas, "kappa values for the sweep");

    CLI11_PARSE(app, argc, argv);

    try {
        apply_kv_list(cfg.params, kv_params);
        if (!m_str.empty()) apply_param(cfg.params, "m", m_str);
        for (const auto& kv : tol_kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw InvalidParams("--tol expects key=value");
            cfg.tol = std::stod(kv.substr(eq + 1));
        }
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        cfg.params.validate();

        if (list_cmd->parsed()) return cmd_list();
        if (certify_cmd->parsed()) return cmd_certify(cfg);
        if (sim_cmd->parsed()) return cmd_simulate(cfg);
        if (prof_cmd->parsed()) return cmd_potential_profile(cfg);
        if (sweep_cmd->parsed()) return cmd_kappa_sweep(cfg);
    } catch (const NoEuclideanLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
