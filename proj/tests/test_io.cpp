#include "doctest.h"

#include "swflow/io.hpp"
#include "swflow/parallel.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace swflow;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

} // namespace

TEST_CASE("snapshot round trip is bit-exact") {
    const LatticeGeometry g({6, 6, 6, 6}, 1.0 / 6.0);
    const Configuration cfg = random_configuration(g, 42, 2, Amplitudes{0.8, 0.7});
    const std::string p1 = tmp_path("swf_rt1.swf"), p2 = tmp_path("swf_rt2.swf");
    snapshot_save(g, cfg, p1);
    const Snapshot s = snapshot_load(p1);
    CHECK(s.dims == g.dims());
    CHECK(s.h == g.spacing());
    LatticeGeometry g2(s.dims, s.h);
    snapshot_save(g2, s.cfg, p2);
    CHECK(slurp(p1) == slurp(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("snapshot load rejects bad magic, truncation, and trailing bytes") {
    const LatticeGeometry g({4, 4, 4, 4}, 0.25);
    const Configuration cfg = random_configuration(g, 1, 1, Amplitudes{0.5, 0.5});
    const std::string p = tmp_path("swf_bad.swf");
    snapshot_save(g, cfg, p);
    std::string bytes = slurp(p);

    std::string corrupted = bytes;
    corrupted[0] = 'X';
    spit(p, corrupted);
    CHECK_THROWS_WITH_AS((void)snapshot_load(p), doctest::Contains("magic"), std::runtime_error);

    spit(p, bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS((void)snapshot_load(p), std::runtime_error);

    spit(p, bytes + "junk");
    CHECK_THROWS_WITH_AS((void)snapshot_load(p), doctest::Contains("trailing"), std::runtime_error);

    CHECK_THROWS_AS((void)snapshot_load(tmp_path("no_such_file.swf")), std::runtime_error);
    std::remove(p.c_str());
}

TEST_CASE("cross-size snapshot load is rejected through the config path") {
    const LatticeGeometry g({4, 4, 4, 4}, 0.25);
    const Configuration cfg = make_configuration(g);
    const std::string p = tmp_path("swf_44.swf");
    snapshot_save(g, cfg, p);

    const std::string cfgp = tmp_path("swf_cfg.cfg");
    spit(cfgp, "lattice.dims = 6 6 6 6\nlattice.h = 0.1\ninit.kind = snapshot\ninit.snapshot = " + p + "\n");
    const RunConfig rc = load_run_config(cfgp);
    const LatticeGeometry g6 = make_geometry(rc);
    CHECK_THROWS_WITH_AS((void)make_initial_configuration(g6, rc), doctest::Contains("dims"),
                         std::runtime_error);
    std::remove(p.c_str());
    std::remove(cfgp.c_str());
}

TEST_CASE("trace CSV round trip preserves every row exactly") {
    FlowTrace t;
    t.dims = {6, 6, 6, 6};
    t.h = 1.0 / 6.0;
    t.mode = FlowMode::gauge_fixed;
    t.integrator = Integrator::rk4;
    t.init_label = "seed=3 band=1";
    for (int i = 0; i < 7; ++i) {
        TraceRow r{};
        r.t = 0.1 * i + 1e-17;
        r.energy = std::exp(-0.3 * i) * 1.2345678901234567;
        r.dissipation_rate = 0.5 / (1 + i);
        r.sup_phi = 0.9 - 0.01 * i;
        r.grad_norm = std::sqrt(r.dissipation_rate);
        r.local_energy_max = 0.25 * r.energy;
        r.dt = 1e-4;
        t.rows.push_back(r);
    }
    const std::string p = tmp_path("swf_trace.csv");
    write_trace_csv(t, p);
    const FlowTrace rt = read_trace_csv(p);
    CHECK(rt.dims == t.dims);
    CHECK(rt.h == t.h);
    CHECK(rt.mode == t.mode);
    CHECK(rt.integrator == t.integrator);
    REQUIRE(rt.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(rt.rows[i].t == t.rows[i].t);
        CHECK(rt.rows[i].energy == t.rows[i].energy);
        CHECK(rt.rows[i].dissipation_rate == t.rows[i].dissipation_rate);
        CHECK(rt.rows[i].sup_phi == t.rows[i].sup_phi);
        CHECK(rt.rows[i].grad_norm == t.rows[i].grad_norm);
        CHECK(rt.rows[i].local_energy_max == t.rows[i].local_energy_max);
        CHECK(rt.rows[i].dt == t.rows[i].dt);
    }
    std::remove(p.c_str());
}

TEST_CASE("run config parsing: full file, unknown keys, bad values") {
    const std::string p = tmp_path("swf_run.cfg");
    spit(p,
         "# example\n"
         "lattice.dims = 8 8 8 8\n"
         "lattice.h = 0.125\n"
         "lattice.scalar_constant = -1.0\n"
         "lattice.scalar_cos_amplitude = -0.5\n"
         "lattice.scalar_cos_axis = 2\n"
         "init.kind = random\n"
         "init.seed = 17\n"
         "init.band_limit = 2\n"
         "init.phi_amplitude = 0.25\n"
         "init.a_amplitude = 0.125\n"
         "init.include_zero_mode = false\n"
         "flow.mode = gauge_fixed\n"
         "flow.integrator = rk4\n"
         "flow.dt_initial = 1e-4\n"
         "flow.cfl_safety = 0.5\n"
         "flow.t_max = 2.5\n"
         "flow.grad_tol = 1e-9\n"
         "flow.monitor_stride = 5\n"
         "flow.local_energy_radius = 0.2\n"
         "perturbation.enabled = true\n"
         "perturbation.constant = 0.1 0 0 0 0 0.1\n"
         "output.trace = out.csv\n"
         "output.snapshot = out.swf\n"
         "check.selection = clifford gauge\n"
         "check.sizes = 8 16\n"
         "check.seed = 9\n");
    const RunConfig rc = load_run_config(p);
    CHECK(rc.dims == std::array<int, 4>{8, 8, 8, 8});
    CHECK(rc.h == 0.125);
    CHECK(rc.seed == 17);
    CHECK(rc.include_zero_mode == false);
    CHECK(rc.mode == FlowMode::gauge_fixed);
    CHECK(rc.integrator == Integrator::rk4);
    CHECK(rc.pert_enabled);
    CHECK(rc.pert_use_constant);
    CHECK(rc.check_selection == std::vector<std::string>{"clifford", "gauge"});

    const LatticeGeometry g = make_geometry(rc);
    CHECK(g.scalar_min() == doctest::Approx(-1.5));
    const FlowParams fp = make_flow_params(g, rc);
    CHECK(fp.perturbation.has_value());
    // constant perturbation was already self-dual: (12) = (34) components
    CHECK(fp.perturbation->mu().c[0] == doctest::Approx(0.1));

    spit(p, "lattice.dims = 6 6 6 6\nnot.a.key = 1\n");
    CHECK_THROWS_WITH_AS((void)load_run_config(p), doctest::Contains("unknown key"),
                         std::runtime_error);
    spit(p, "lattice.h = banana\n");
    CHECK_THROWS_AS((void)load_run_config(p), std::runtime_error);
    spit(p, "lattice.h 0.25\n");
    CHECK_THROWS_AS((void)load_run_config(p), std::runtime_error);
    std::remove(p.c_str());
}

TEST_CASE("trace reader rejects malformed rows") {
    const std::string p = tmp_path("swf_badrow.csv");
    spit(p, "t,energy,dissipation_rate,sup_phi,grad_norm,local_energy_max,dt\n1.0,2.0,oops\n");
    CHECK_THROWS_WITH_AS((void)read_trace_csv(p), doctest::Contains("malformed"),
                         std::runtime_error);
    std::remove(p.c_str());
}

TEST_CASE("snapshot loader rejects unsupported versions") {
    const LatticeGeometry g({4, 4, 4, 4}, 0.25);
    const std::string p = tmp_path("swf_ver.swf");
    snapshot_save(g, make_configuration(g), p);
    std::string bytes = slurp(p);
    bytes[4] = 9; // version field, little-endian
    spit(p, bytes);
    CHECK_THROWS_WITH_AS((void)snapshot_load(p), doctest::Contains("version"), std::runtime_error);
    std::remove(p.c_str());
}

TEST_CASE("config band limit above the grid Nyquist margin is rejected at use") {
    const std::string p = tmp_path("swf_band.cfg");
    spit(p,
         "lattice.dims = 6 6 6 6\n"
         "lattice.h = 0.16666666666666666\n"
         "init.kind = random\n"
         "init.band_limit = 5\n");
    const RunConfig rc = load_run_config(p);
    const LatticeGeometry g = make_geometry(rc);
    CHECK_THROWS_AS((void)make_initial_configuration(g, rc), std::invalid_argument);
    std::remove(p.c_str());
}

TEST_CASE("reductions and traces are identical across thread counts") {
    const int saved = thread_count();
    const LatticeGeometry g({6, 6, 6, 6}, 1.0 / 6.0);
    const Configuration cfg = random_configuration(g, 101, 2, Amplitudes{0.7, 0.6});

    set_threads(1);
    const double e1 = sw_energy(g, cfg).total;
    const TangentVector g1 = sw_gradient(g, cfg);
    set_threads(4);
    const double e4 = sw_energy(g, cfg).total;
    const TangentVector g4 = sw_gradient(g, cfg);
    CHECK(e1 == e4);
    for (std::size_t i = 0; i < g1.psi.v.size(); ++i) CHECK(g1.psi.v[i] == g4.psi.v[i]);
    for (std::size_t i = 0; i < g1.b.c.size(); ++i) CHECK(g1.b.c[i] == g4.b.c[i]);

    FlowParams p;
    p.dt_initial = 1e-4;
    p.t_max = 10.0 * 1e-4;
    p.grad_tol = 1e-16;
    p.monitor_stride = 1;
    const std::string pa = tmp_path("swf_t1.csv"), pb = tmp_path("swf_t4.csv");
    set_threads(1);
    write_trace_csv(run_flow(g, cfg, p).trace, pa);
    set_threads(4);
    write_trace_csv(run_flow(g, cfg, p).trace, pb);
    CHECK(slurp(pa) == slurp(pb));
    std::remove(pa.c_str());
    std::remove(pb.c_str());
    set_threads(saved);
}
