#include "mweyl/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "mweyl/io.hpp"
#include "mweyl/verify.hpp"

namespace mweyl {

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config " + path);
    return Json::parse(in);
}

Potential potential_from_json(const Json& j) {
    if (j.contains("csv")) return read_potential_csv(j.at("csv").get<std::string>());
    if (j.contains("x"))
        return Potential::from_samples(j.at("x").get<std::vector<double>>(),
                                       j.at("v").get<std::vector<double>>());
    std::string name = j.value("name", "");
    if (name == "zero") return Potential::zero();
    if (name == "const") return Potential::constant(j.value("value", 0.0));
    if (name == "sin")
        return Potential::from_function([](double x) { return std::sin(x); }, "sin");
    throw std::invalid_argument("potential: need csv, samples, or name in {zero, const, sin}");
}

BoundaryData boundary_from_json(const Json& j) {
    double alpha = j.value("alpha", 0.0);
    if (!j.contains("endpoint") || j.at("endpoint").is_string())
        return BoundaryData::lp(alpha);
    const Json& e = j.at("endpoint");
    return BoundaryData::regular(alpha, e.at("b").get<double>(), e.value("beta", 0.0));
}

std::vector<Cplx> grid_from_json(const Json& j) {
    if (!j.contains("grid")) return default_grid();
    std::vector<Cplx> g;
    for (const auto& p : j.at("grid")) g.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return g;
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    return dir + "/" + name;
}

int cmd_mfun(const Json& cfg, const std::string& out_dir, double tol, unsigned threads) {
    std::vector<Cplx> grid = grid_from_json(cfg);
    std::vector<MGridRow> rows(grid.size());
    bool all_ok = true;

    if (cfg.contains("hamiltonian")) {
        Hamiltonian h = hamiltonian_from_json(cfg.at("hamiltonian"));
        parallel_for(grid.size(), threads, [&](std::size_t i) {
            auto mr = m_function(h, grid[i], tol);
            rows[i] = {grid[i], mr.m, mr.diameter, mr.L_used};
            if (!mr.converged) all_ok = false;
        });
    } else if (cfg.contains("potential")) {
        Potential v = potential_from_json(cfg.at("potential"));
        BoundaryData bd = boundary_from_json(cfg);
        parallel_for(grid.size(), threads, [&](std::size_t i) {
            auto mr = m_schrodinger(v, bd, grid[i], tol);
            rows[i] = {grid[i], mr.m, mr.spread, mr.b_used};
            if (!mr.converged) all_ok = false;
        });
    } else {
        throw std::invalid_argument("mfun: config needs `hamiltonian` or `potential`");
    }
    write_m_grid_csv(join_path(out_dir, "m_grid.csv"), rows);
    if (!all_ok) {
        std::cerr << "mfun: some grid points did not converge\n";
        return 3;
    }
    return 0;
}

int cmd_convert(const Json& cfg, const std::string& out_dir) {
    std::string dir = cfg.at("direction").get<std::string>();
    if (dir == "v-to-phi") {
        Potential v = potential_from_json(cfg.at("potential"));
        BoundaryData bd = boundary_from_json(cfg);
        double cutoff = cfg.value("cutoff", 48.0);
        auto fwd = schrodinger_to_canonical(v, bd, cutoff);
        write_phi_csv(join_path(out_dir, "phi.csv"), *fwd.phi);
        write_transform_csv(join_path(out_dir, "transform.csv"), fwd.data);
        return 0;
    }
    if (dir == "phi-to-v") {
        SmoothPhi phi = read_phi_csv(cfg.at("phi").at("csv").get<std::string>());
        double t_hi = cfg.value("t_hi", phi.domain_end());
        auto back = canonical_to_schrodinger(phi, phi.grid().front(), t_hi);
        write_potential_csv(join_path(out_dir, "v.csv"), back.v, back.data.x.front(),
                            back.data.x.back());
        write_transform_csv(join_path(out_dir, "transform.csv"), back.data);
        return 0;
    }
    throw std::invalid_argument("convert: direction must be v-to-phi or phi-to-v");
}

int cmd_approximate(const Json& cfg, const std::string& out_dir, double tol, unsigned threads) {
    TargetSpec target = target_from_json(cfg.at("target"));
    double alpha = cfg.value("alpha", 0.0);
    std::vector<ScheduleEntry> schedule;
    if (cfg.contains("schedule")) {
        for (const auto& e : cfg.at("schedule"))
            schedule.push_back({e.at("n").get<int>(), e.value("eps", 0.0), e.value("h", 0.0)});
    } else {
        for (int n = cfg.value("n_from", 2); n <= cfg.value("n_to", 5); ++n)
            schedule.push_back({n, 0.0, 0.0});
    }
    ApproximateOptions opts;
    opts.window = cfg.value("window", 0.0);
    opts.m_tol = cfg.value("m_tol", tol);
    opts.threads = threads;
    opts.grid = grid_from_json(cfg);

    auto results = approximate(target, schedule, alpha, opts);

    Json report;
    report["target"] = target_to_json(target);
    report["alpha"] = alpha;
    Json stages = Json::array();
    bool all_ok = true;
    for (const auto& r : results) {
        std::string suffix = "n" + std::to_string(r.n);
        std::string phi_file = "phi_" + suffix + ".csv";
        std::string v_file = "v_" + suffix + ".csv";
        write_phi_csv(join_path(out_dir, phi_file), *r.phi);
        write_potential_csv(join_path(out_dir, v_file), r.v, r.v.sample_x().front(),
                            r.v.sample_x().back());
        Json s{{"n", r.n},          {"eps", r.eps},
               {"h", r.h},          {"weakstar", r.weakstar},
               {"m_error", r.m_error}, {"V_file", v_file},
               {"phi_file", phi_file}, {"diameters", r.diameters},
               {"L_used", r.l_used}};
        if (r.regular_endpoint) {
            s["schrodinger_b"] = r.schrodinger_b;
            s["schrodinger_beta"] = r.schrodinger_beta;
        }
        stages.push_back(s);
        if (!r.all_converged) all_ok = false;
    }
    report["schedule"] = stages;
    write_text_atomic(join_path(out_dir, "report.json"), report.dump(2) + "\n");
    if (!all_ok) {
        std::cerr << "approximate: some m evaluations did not converge\n";
        return 3;
    }
    return 0;
}

int cmd_metric(const Json& cfg, const std::string& out_dir) {
    Hamiltonian h1 = hamiltonian_from_json(cfg.at("h1"));
    Hamiltonian h2 = hamiltonian_from_json(cfg.at("h2"));
    double d = weakstar_dist(h1, h2);
    std::cout << format_g17(d) << "\n";
    write_text_atomic(join_path(out_dir, "metric.json"),
                      Json{{"weakstar", d}}.dump(2) + "\n");
    return 0;
}

int cmd_verify(const std::string& out_dir) {
    auto checks = run_verification(std::cout);
    Json j;
    j["checks"] = Json::array();
    bool all = true;
    for (const auto& c : checks) {
        j["checks"].push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        all = all && c.pass;
    }
    j["pass"] = all;
    write_text_atomic(join_path(out_dir, "verify.json"), j.dump(2) + "\n");
    return all ? 0 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Weyl-Titchmarsh m functions of Schrodinger operators and canonical systems"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    double tol = 1e-6;
    int threads = 0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--tol", tol, "numerical tolerance");
        sub->add_option("--threads", threads, "worker threads (default MWEYL_THREADS or 1)");
    };

    CLI::App* mfun = app.add_subcommand("mfun", "m-function grid for a Hamiltonian or potential");
    add_common(mfun, true);
    CLI::App* conv = app.add_subcommand("convert", "potential <-> angle function");
    add_common(conv, true);
    CLI::App* appr = app.add_subcommand("approximate", "density pipeline with report");
    add_common(appr, true);
    CLI::App* metric = app.add_subcommand("metric", "weak-* distance of two Hamiltonians");
    add_common(metric, true);
    CLI::App* verify = app.add_subcommand("verify", "run the invariant battery");
    add_common(verify, false);

    std::vector<const char*> argv;
    argv.push_back("mweyl");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        unsigned nthreads = resolve_threads(threads);
        if (mfun->parsed()) return cmd_mfun(load_json(config_path), out_dir, tol, nthreads);
        if (conv->parsed()) return cmd_convert(load_json(config_path), out_dir);
        if (appr->parsed()) return cmd_approximate(load_json(config_path), out_dir, tol, nthreads);
        if (metric->parsed()) return cmd_metric(load_json(config_path), out_dir);
        if (verify->parsed()) return cmd_verify(out_dir);
    } catch (const NonconvergenceError& e) {
        std::cerr << "nonconvergence: " << e.what() << "\n";
        return 3;
    } catch (const Json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace mweyl
