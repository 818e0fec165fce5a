#include "swflow/diagnostics.hpp"
#include "swflow/io.hpp"
#include "swflow/parallel.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>

using namespace swflow;

namespace {

int cmd_run(const std::string& config_path) {
    RunConfig rc = load_run_config(config_path);
    LatticeGeometry g = make_geometry(rc);
    const Configuration cfg0 = make_initial_configuration(g, rc);
    const FlowParams p = make_flow_params(g, rc);

    RunResult res = run_flow(g, cfg0, p);
    res.trace.init_label = "seed=" + std::to_string(rc.seed) +
                           " band=" + std::to_string(rc.band_limit);
    if (!rc.trace_path.empty()) write_trace_csv(res.trace, rc.trace_path);
    if (!rc.snapshot_path.empty()) snapshot_save(g, res.state.cfg, rc.snapshot_path);

    const TraceRow& last = res.trace.rows.back();
    std::printf("status: %s (%s)\n",
                res.status == FlowStatus::converged     ? "converged"
                : res.status == FlowStatus::time_limit  ? "time-limit"
                                                        : "aborted",
                res.message.c_str());
    std::printf("t = %.6g  energy = %.12g  grad_norm = %.6g  sup|phi| = %.6g\n", last.t,
                last.energy, last.grad_norm, last.sup_phi);
    if (res.status == FlowStatus::converged || res.status == FlowStatus::time_limit) return 0;
    return 2;
}

int cmd_check(const std::string& config_path) {
    RunConfig rc = load_run_config(config_path);
    const auto reports = run_checks(rc.check_selection, rc.check_sizes, rc.check_seed);
    if (reports.empty()) {
        std::printf("no checks selected (no-op)\n");
        return 0;
    }
    bool all_pass = true;
    for (const auto& rep : reports) {
        std::fputs(rep.to_text().c_str(), stdout);
        std::fputs("\n", stdout);
        all_pass = all_pass && rep.pass;
    }
    std::printf("checks: %s\n", all_pass ? "all passed" : "FAILURES (see above)");
    return all_pass ? 0 : 1;
}

int cmd_fit_rate(const std::string& trace_path, double einf, const std::string& window) {
    double lo = 0.0, hi = 0.0;
    if (std::sscanf(window.c_str(), "%lf,%lf", &lo, &hi) != 2) {
        std::fprintf(stderr, "fit-rate: --window expects <t_lo>,<t_hi>\n");
        return 1;
    }
    const FlowTrace trace = read_trace_csv(trace_path);
    try {
        const RateFitResult fit = fit_rate(trace, einf, lo, hi);
        std::printf("gamma_hat = %.8g\n", fit.gamma_hat);
        std::printf("slope = %.8g\n", fit.slope);
        std::printf("window = [%.6g, %.6g]\n", fit.t_lo, fit.t_hi);
        std::printf("residual = %.6g\n", fit.residual);
        return 0;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "fit-rate: %s\n", e.what());
        return 2;
    }
}

int cmd_snapshot_info(const std::string& path) {
    const Snapshot s = snapshot_load(path);
    const std::size_t V = std::size_t(s.dims[0]) * s.dims[1] * s.dims[2] * s.dims[3];
    std::printf("dims = %d %d %d %d\n", s.dims[0], s.dims[1], s.dims[2], s.dims[3]);
    std::printf("h = %.17g\n", s.h);
    std::printf("sites = %zu\n", V);
    LatticeGeometry g(s.dims, s.h);
    std::printf("sup|phi| = %.8g\n", sup_norm(s.cfg.phi));
    std::printf("energy = %.12g\n", sw_energy(g, s.cfg).total);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seiberg-Witten gradient flow on the discrete 4-torus"};
    app.require_subcommand(1);

    std::string config_path, trace_path, snap_path, window = "0,0";
    double einf = 0.0;

    auto* run = app.add_subcommand("run", "integrate the flow from a run config");
    run->add_option("config", config_path, "run configuration file")->required();

    auto* check = app.add_subcommand("check", "run structural-identity diagnostics");
    check->add_option("config", config_path, "run configuration file")->required();

    auto* fit = app.add_subcommand("fit-rate", "fit the convergence-rate exponent from a trace");
    fit->add_option("trace", trace_path, "trace CSV file")->required();
    fit->add_option("--einf", einf, "limit energy E_inf")->required();
    fit->add_option("--window", window, "fit window t_lo,t_hi")->required();

    auto* snap = app.add_subcommand("snapshot", "snapshot utilities");
    auto* info = snap->add_subcommand("info", "print snapshot header and summary");
    info->add_option("path", snap_path, "snapshot file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path);
        if (*check) return cmd_check(config_path);
        if (*fit) return cmd_fit_rate(trace_path, einf, window);
        if (*snap) {
            if (*info) return cmd_snapshot_info(snap_path);
            std::fprintf(stderr, "snapshot: missing subcommand\n");
            return 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
