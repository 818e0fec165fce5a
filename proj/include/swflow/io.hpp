#pragma once

#include "swflow/flow.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace swflow {

// Binary snapshot, bit-exact round trip:
//   magic "SWF1" | version u32 LE | dims 4 x u32 LE | h f64 LE
//   phi: V*4 f64  (re, im of both components per site, site-major, x4 slowest)
//   a:   V*4 f64  (imaginary parts only, the 4 components per site)
// Storing only imaginary parts enforces a in i*Lambda^1 at the format level.
struct Snapshot {
    std::array<int, 4> dims{};
    double h = 0.0;
    Configuration cfg;
};

void snapshot_save(const LatticeGeometry& g, const Configuration& cfg, const std::string& path);
Snapshot snapshot_load(const std::string& path);

// Trace CSV with a versioned header comment block; doubles printed with %.17g
// so re-runs produce identical bytes.
void write_trace_csv(const FlowTrace& trace, const std::string& path);
FlowTrace read_trace_csv(const std::string& path);

// Line-oriented `key = value` run configuration with dotted sections.
// '#' starts a comment; unknown keys are rejected.
struct RunConfig {
    // lattice
    std::array<int, 4> dims{6, 6, 6, 6};
    double h = 1.0 / 6.0;
    double scalar_constant = 0.0;
    double scalar_cos_amplitude = 0.0;
    int scalar_cos_axis = 1; // 1..4

    // init
    enum class InitKind { zero, random, snapshot };
    InitKind init_kind = InitKind::random;
    std::uint64_t seed = 1;
    int band_limit = 1;
    double phi_amplitude = 0.1;
    double a_amplitude = 0.1;
    bool include_zero_mode = true;
    std::string init_snapshot;

    // flow
    FlowMode mode = FlowMode::direct;
    Integrator integrator = Integrator::euler;
    double dt_initial = 1e-4;
    double cfl_safety = 0.9;
    double t_max = 1.0;
    double grad_tol = 1e-8;
    int monitor_stride = 1;
    double local_energy_R = 0.0;

    // perturbation
    bool pert_enabled = false;
    std::uint64_t pert_seed = 7;
    int pert_band = 1;
    double pert_amplitude = 0.0;
    bool pert_use_constant = false;
    std::array<double, 6> pert_constant{}; // imaginary parts, projected self-dual

    // output
    std::string trace_path = "trace.csv";
    std::string snapshot_path;

    // check
    std::vector<std::string> check_selection{"default"};
    std::vector<int> check_sizes{8, 16};
    std::uint64_t check_seed = 1;
};

RunConfig load_run_config(const std::string& path);

LatticeGeometry make_geometry(const RunConfig& rc);
Configuration make_initial_configuration(const LatticeGeometry& g, const RunConfig& rc);
FlowParams make_flow_params(const LatticeGeometry& g, const RunConfig& rc);

} // namespace swflow
