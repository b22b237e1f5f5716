#include "ifront/cli.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifront/asymptotics.hpp"
#include "ifront/errors.hpp"
#include "ifront/pdesim.hpp"
#include "ifront/profile.hpp"
#include "ifront/shooting.hpp"

namespace ifront::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw NumericalError("cannot open output file: " + path);
    os << text;
}

std::string csv_profile(const FrontProfile& prof) {
    std::string s = "xi,U,V,y\n";
    for (std::size_t i = 0; i < prof.xi.size(); ++i) {
        s += fmt(prof.xi[i]);
        s += ',';
        s += fmt(prof.U[i]);
        s += ',';
        s += fmt(prof.V[i]);
        s += ',';
        s += fmt(prof.y[i]);
        s += '\n';
    }
    return s;
}

ordered_json diagnostics_json(const ModelParams& p, const ShootingResult& sr,
                              const FrontProfile& prof) {
    ordered_json j;
    j["d"] = p.d;
    j["r"] = p.r;
    j["c"] = p.c;
    j["alpha1"] = sr.alpha1;
    j["bracket_width"] = sr.alpha_high - sr.alpha_low;
    j["speed_residual"] = prof.diagnostics.speed_residual;
    j["tail_gamma_fit"] = prof.diagnostics.tail_gamma.rate;
    j["tail_lambda_fit"] = prof.diagnostics.tail_lambda.rate;
    j["tail_mu_fit"] = prof.diagnostics.tail_mu.rate;
    j["tail_ratio_fit"] = prof.diagnostics.tail_ratio;
    j["center_manifold_residual"] = prof.diagnostics.center_manifold_residual;
    return j;
}

double resolved_y_max(const RunPlan& plan) {
    return plan.y_max > 0.0 ? plan.y_max : default_y_max(plan.c);
}

int run_rates(const RunPlan& plan) {
    const ModelParams p(plan.d, plan.r, plan.c);
    const Rates rt = compute_rates(p);
    ordered_json j;
    j["d"] = p.d;
    j["r"] = p.r;
    j["c"] = p.c;
    j["regime"] = p.homogeneous() ? "homogeneous" : "heterogeneous";
    j["lambda"] = rt.lambda;
    j["mu"] = rt.mu;
    j["gamma"] = rt.gamma;
    j["eta"] = rt.eta;
    j["zeta"] = rt.zeta;
    j["delta"] = rt.delta;
    j["degenerate"] = rt.degenerate;
    write_text(plan.out, j.dump(2) + "\n");
    return 0;
}

int run_front(const RunPlan& plan) {
    const ModelParams p(plan.d, plan.r, plan.c);
    const ShootingResult sr = find_alpha1(p, plan.alpha_tol, resolved_y_max(plan));
    const FrontProfile prof = reconstruct(sr.trajectory, p);
    if (plan.format == RunPlan::Format::Csv) {
        write_text(plan.out, csv_profile(prof));
    } else {
        ordered_json j;
        j["xi"] = prof.xi;
        j["U"] = prof.U;
        j["V"] = prof.V;
        j["y"] = prof.y;
        write_text(plan.out, j.dump() + "\n");
    }
    write_text(plan.diag, diagnostics_json(p, sr, prof).dump(2) + "\n");
    return 0;
}

int scan_threads() {
    if (const char* env = std::getenv("IFRONT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

int run_scan(const RunPlan& plan) {
    std::vector<double> speeds(plan.n);
    for (int i = 0; i < plan.n; ++i)
        speeds[i] = plan.n == 1
                        ? plan.cmin
                        : plan.cmin + (plan.cmax - plan.cmin) * i / (plan.n - 1.0);

    std::vector<ordered_json> records(speeds.size());
    std::vector<std::string> failures(speeds.size());
    std::atomic<std::size_t> next{0};

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= speeds.size()) return;
            try {
                const ModelParams p(plan.d, plan.r, speeds[i]);
                const double y_max =
                    plan.y_max > 0.0 ? plan.y_max : default_y_max(speeds[i]);
                const ShootingResult sr = find_alpha1(p, plan.alpha_tol, y_max);
                const FrontProfile prof = reconstruct(sr.trajectory, p);
                records[i] = diagnostics_json(p, sr, prof);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };

    const int nthreads = std::min<int>(scan_threads(), plan.n);
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (std::size_t i = 0; i < speeds.size(); ++i)
        if (!failures[i].empty())
            throw NumericalError("scan at c = " + fmt(speeds[i]) + ": " + failures[i]);

    ordered_json arr = ordered_json::array();
    for (auto& rec : records) arr.push_back(std::move(rec));
    write_text(plan.out, arr.dump(2) + "\n");
    return 0;
}

int run_asym(const RunPlan& plan) {
    const ModelParams p(plan.d, plan.r, plan.c);
    const SlowFrontApprox approx = calibrate_alpha(p);

    // translation aligning the sharp edge with the U = 1/2 normalization of
    // reconstructed fronts: U0 equals 1/2 at xi50
    const double xi50 = p.c / approx.b * std::log((1.0 + approx.b) / (1.0 + 2.0 * approx.b));

    std::string s;
    if (plan.compare) {
        const ShootingResult sr = find_alpha1(p, plan.alpha_tol, resolved_y_max(plan));
        const FrontProfile prof = reconstruct(sr.trajectory, p);
        s = "xi,U0,V0,U,V\n";
        for (std::size_t i = 0; i < prof.xi.size(); ++i) {
            const double xs = prof.xi[i] + xi50; // sharp-profile coordinate
            double U0 = 1.0, V0 = 0.0;
            if (xs < 0.0) {
                const double grid[1] = {xs};
                const SharpProfile sp = sharp_profile(approx, grid);
                U0 = sp.U0[0];
                V0 = sp.V0[0];
            }
            s += fmt(prof.xi[i]);
            s += ',';
            s += fmt(U0);
            s += ',';
            s += fmt(V0);
            s += ',';
            s += fmt(prof.U[i]);
            s += ',';
            s += fmt(prof.V[i]);
            s += '\n';
        }
    } else {
        const double span =
            std::max(2.0 * std::abs(approx.xi_star), 20.0 * p.c / approx.b);
        const int n = 2000;
        std::vector<double> grid(n);
        for (int i = 0; i < n; ++i) grid[i] = -span + span * i / static_cast<double>(n);
        const SharpProfile sp = sharp_profile(approx, grid);
        s = "xi,U0,V0\n";
        for (int i = 0; i < n; ++i) {
            s += fmt(sp.xi[i]);
            s += ',';
            s += fmt(sp.U0[i]);
            s += ',';
            s += fmt(sp.V0[i]);
            s += '\n';
        }
    }
    write_text(plan.out, s);
    return 0;
}

int run_effdiff(const RunPlan& plan) {
    const ModelParams p(plan.d, plan.r, plan.c);
    const ShootingResult sr = find_alpha1(p, plan.alpha_tol, resolved_y_max(plan));
    const FrontProfile prof = reconstruct(sr.trajectory, p);
    std::string s = "V,phi\n";
    for (const auto& pt : effective_diffusion(prof)) {
        s += fmt(pt[0]);
        s += ',';
        s += fmt(pt[1]);
        s += '\n';
    }
    write_text(plan.out, s);
    return 0;
}

std::string csv_frame(const FieldPair& f, const Grid1D& g) {
    std::string s = "x,U,V\n";
    for (int i = 0; i < g.nx; ++i) {
        s += fmt(g.x(i));
        s += ',';
        s += fmt(f.U[i]);
        s += ',';
        s += fmt(f.V[i]);
        s += '\n';
    }
    return s;
}

int run_pde(const RunPlan& plan) {
    const ModelParams p(plan.d, plan.r, 1.0); // wave speed plays no role here
    const Grid1D grid(-plan.L, plan.L, plan.nx);
    FieldPair init = heaviside_initial(grid, p, plan.x0);

    int frame_idx = 0;
    std::string stem = plan.out;
    if (const auto dot = stem.rfind('.'); dot != std::string::npos) stem.resize(dot);
    const auto frame_cb = [&](const FieldPair& f) {
        if (plan.frames_every > 0 && frame_idx % plan.frames_every == 0) {
            char suffix[32];
            std::snprintf(suffix, sizeof(suffix), "_%04d.csv", frame_idx);
            write_text(stem + suffix, csv_frame(f, grid));
        }
        ++frame_idx;
    };

    const PdeRunResult res =
        run(std::move(init), plan.tend, grid, p, plan.out_dt, 1.0, frame_cb);

    write_text(plan.out, csv_frame(res.fields, grid));
    ordered_json j;
    j["t"] = res.times;
    j["front_position"] = res.front_positions;
    j["measured_speed"] = res.measured_speed;
    const std::string diag_path =
        !plan.diag.empty() ? plan.diag : (plan.out.empty() ? "" : stem + ".json");
    write_text(diag_path, j.dump(2) + "\n");
    return 0;
}

void add_params(CLI::App* cmd, RunPlan& plan, bool with_c) {
    cmd->add_option("--d", plan.d, "competition coefficient (d != 1)")->required();
    cmd->add_option("--r", plan.r, "tumor growth rate")->required();
    if (with_c) cmd->add_option("--c", plan.c, "wave speed")->required();
    cmd->set_config("--config", "", "flat key = value config file (flags override)");
}

void add_shooting_options(CLI::App* cmd, RunPlan& plan) {
    cmd->add_option("--ymax", plan.y_max, "integration horizon (default max(200, 50/c))");
    cmd->add_option("--alpha-tol", plan.alpha_tol, "relative bracket tolerance");
}

} // namespace

RunPlan parse(int argc, const char* const* argv) {
    RunPlan plan;
    CLI::App app{"invasion front computation for the reduced tumor-growth system"};
    app.require_subcommand(1);

    CLI::App* rates = app.add_subcommand("rates", "print derived linearization rates");
    add_params(rates, plan, true);
    rates->add_option("--out", plan.out, "output path (default stdout)");

    CLI::App* front = app.add_subcommand("front", "compute a front profile by shooting");
    add_params(front, plan, true);
    add_shooting_options(front, plan);
    front->add_option("--out", plan.out, "profile CSV path");
    front->add_option("--diag", plan.diag, "diagnostics JSON path (default stdout)");
    std::string format = "csv";
    front->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* scan = app.add_subcommand("scan", "front diagnostics over a speed range");
    add_params(scan, plan, false);
    scan->add_option("--cmin", plan.cmin, "lowest speed")->required();
    scan->add_option("--cmax", plan.cmax, "highest speed")->required();
    scan->add_option("--n", plan.n, "number of speeds")->required()
        ->check(CLI::PositiveNumber);
    add_shooting_options(scan, plan);
    scan->add_option("--out", plan.out, "JSON records path (default stdout)");

    CLI::App* asym = app.add_subcommand("asym", "small-speed sharp-front approximation");
    add_params(asym, plan, true);
    add_shooting_options(asym, plan);
    asym->add_flag("--compare", plan.compare, "also shoot the true front on the same grid");
    asym->add_option("--out", plan.out, "CSV path (default stdout)");

    CLI::App* effdiff = app.add_subcommand("effdiff", "effective diffusion curve (V, phi)");
    add_params(effdiff, plan, true);
    add_shooting_options(effdiff, plan);
    effdiff->add_option("--out", plan.out, "CSV path (default stdout)");

    CLI::App* pde = app.add_subcommand("pde", "direct simulation from Heaviside data");
    add_params(pde, plan, false);
    pde->add_option("--L", plan.L, "half-width of the domain [-L, L]");
    pde->add_option("--nx", plan.nx, "grid points")->check(CLI::Range(16, 1 << 24));
    pde->add_option("--tend", plan.tend, "final time");
    pde->add_option("--out-dt", plan.out_dt, "frame spacing");
    pde->add_option("--x0", plan.x0, "initial jump location");
    pde->add_option("--frames", plan.frames_every, "write every k-th frame CSV");
    pde->add_option("--out", plan.out, "final frame CSV path");
    pde->add_option("--diag", plan.diag, "sidecar JSON path (default <out>.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (rates->parsed()) plan.cmd = RunPlan::Cmd::Rates;
    else if (front->parsed()) plan.cmd = RunPlan::Cmd::Front;
    else if (scan->parsed()) plan.cmd = RunPlan::Cmd::Scan;
    else if (asym->parsed()) plan.cmd = RunPlan::Cmd::Asym;
    else if (effdiff->parsed()) plan.cmd = RunPlan::Cmd::Effdiff;
    else plan.cmd = RunPlan::Cmd::Pde;
    plan.format = format == "json" ? RunPlan::Format::Json : RunPlan::Format::Csv;
    return plan;
}

int execute(const RunPlan& plan) {
    const char* stage = "setup";
    try {
        switch (plan.cmd) {
            case RunPlan::Cmd::Rates: stage = "rates"; return run_rates(plan);
            case RunPlan::Cmd::Front: stage = "front"; return run_front(plan);
            case RunPlan::Cmd::Scan: stage = "scan"; return run_scan(plan);
            case RunPlan::Cmd::Asym: stage = "asym"; return run_asym(plan);
            case RunPlan::Cmd::Effdiff: stage = "effdiff"; return run_effdiff(plan);
            case RunPlan::Cmd::Pde: stage = "pde"; return run_pde(plan);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "ifront " << stage << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ifront " << stage << ": " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int main_cli(int argc, const char* const* argv) {
    try {
        const RunPlan plan = parse(argc, argv);
        return execute(plan);
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "ifront: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ifront::cli
