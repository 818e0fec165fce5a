#include "swflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swflow {

namespace {

constexpr char kMagic[4] = {'S', 'W', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw std::runtime_error("snapshot: truncated header");
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("snapshot: truncated data");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

void snapshot_save(const LatticeGeometry& g, const Configuration& cfg, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open for writing: " + path);
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    for (int j = 0; j < 4; ++j) put_u32(os, static_cast<std::uint32_t>(g.dims()[j]));
    put_f64(os, g.spacing());
    for (std::size_t x = 0; x < g.volume(); ++x)
        for (int c = 0; c < 2; ++c) {
            put_f64(os, cfg.phi.v[2 * x + c].real());
            put_f64(os, cfg.phi.v[2 * x + c].imag());
        }
    for (std::size_t x = 0; x < g.volume(); ++x)
        for (int j = 0; j < 4; ++j) put_f64(os, cfg.a.c[4 * x + j]);
    if (!os) throw std::runtime_error("snapshot: write failed: " + path);
}

Snapshot snapshot_load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("snapshot: bad magic (not a SWF1 file): " + path);
    const std::uint32_t ver = get_u32(is);
    if (ver != kVersion) throw std::runtime_error("snapshot: unsupported format version");
    Snapshot snap;
    for (int j = 0; j < 4; ++j) snap.dims[j] = static_cast<int>(get_u32(is));
    snap.h = get_f64(is);
    const std::size_t V = std::size_t(snap.dims[0]) * snap.dims[1] * snap.dims[2] * snap.dims[3];
    snap.cfg.phi.v.resize(2 * V);
    snap.cfg.phi.chi = Chirality::plus;
    for (std::size_t x = 0; x < V; ++x)
        for (int c = 0; c < 2; ++c) {
            const double re = get_f64(is), im = get_f64(is);
            snap.cfg.phi.v[2 * x + c] = cplx(re, im);
        }
    snap.cfg.a.c.resize(4 * V);
    snap.cfg.a.tag = ValueTag::imaginary;
    for (std::size_t x = 0; x < V; ++x)
        for (int j = 0; j < 4; ++j) snap.cfg.a.c[4 * x + j] = get_f64(is);
    char extra;
    if (is.read(&extra, 1)) throw std::runtime_error("snapshot: trailing bytes after payload");
    return snap;
}

void write_trace_csv(const FlowTrace& trace, const std::string& path) {
    std::ofstream os(path, std::ios::binary); // binary: no newline translation
    if (!os) throw std::runtime_error("trace: cannot open for writing: " + path);
    os << "# swflow trace v1\n";
    os << "# dims = " << trace.dims[0] << " " << trace.dims[1] << " " << trace.dims[2] << " "
       << trace.dims[3] << "\n";
    os << "# h = " << fmt_g17(trace.h) << "\n";
    os << "# mode = " << (trace.mode == FlowMode::direct ? "direct" : "gauge_fixed") << "\n";
    os << "# integrator = " << (trace.integrator == Integrator::euler ? "euler" : "rk4") << "\n";
    if (!trace.init_label.empty()) os << "# init = " << trace.init_label << "\n";
    os << "t,energy,dissipation_rate,sup_phi,grad_norm,local_energy_max,dt\n";
    for (const auto& r : trace.rows)
        os << fmt_g17(r.t) << ',' << fmt_g17(r.energy) << ',' << fmt_g17(r.dissipation_rate) << ','
           << fmt_g17(r.sup_phi) << ',' << fmt_g17(r.grad_norm) << ',' << fmt_g17(r.local_energy_max)
           << ',' << fmt_g17(r.dt) << "\n";
    if (!os) throw std::runtime_error("trace: write failed: " + path);
}

FlowTrace read_trace_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("trace: cannot open: " + path);
    FlowTrace trace;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key, eq;
            hs >> key >> eq;
            if (key == "dims" && eq == "=") {
                for (int j = 0; j < 4; ++j) hs >> trace.dims[j];
            } else if (key == "h" && eq == "=") {
                hs >> trace.h;
            } else if (key == "mode" && eq == "=") {
                std::string m;
                hs >> m;
                trace.mode = m == "gauge_fixed" ? FlowMode::gauge_fixed : FlowMode::direct;
            } else if (key == "integrator" && eq == "=") {
                std::string m;
                hs >> m;
                trace.integrator = m == "rk4" ? Integrator::rk4 : Integrator::euler;
            }
            continue;
        }
        if (!have_header && line.rfind("t,", 0) == 0) {
            have_header = true;
            continue;
        }
        std::istringstream rs(line);
        TraceRow r{};
        char comma;
        if (rs >> r.t >> comma >> r.energy >> comma >> r.dissipation_rate >> comma >> r.sup_phi >>
            comma >> r.grad_norm >> comma >> r.local_energy_max >> comma >> r.dt)
            trace.rows.push_back(r);
        else
            throw std::runtime_error("trace: malformed row: " + line);
    }
    return trace;
}

// --- run configuration ----------------------------------------------------

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::runtime_error("config: bad boolean for " + key + ": " + v);
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open: " + path);
    RunConfig rc;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        std::istringstream vs(val);
        auto num = [&](double& out) {
            if (!(std::istringstream(val) >> out))
                throw std::runtime_error("config: bad number for " + key + ": " + val);
        };
        auto inum = [&](int& out) {
            if (!(std::istringstream(val) >> out))
                throw std::runtime_error("config: bad integer for " + key + ": " + val);
        };
        auto unum = [&](std::uint64_t& out) {
            if (!(std::istringstream(val) >> out))
                throw std::runtime_error("config: bad integer for " + key + ": " + val);
        };

        if (key == "lattice.dims") {
            if (!(vs >> rc.dims[0] >> rc.dims[1] >> rc.dims[2] >> rc.dims[3]))
                throw std::runtime_error("config: lattice.dims needs 4 integers");
        } else if (key == "lattice.h") {
            num(rc.h);
        } else if (key == "lattice.scalar_constant") {
            num(rc.scalar_constant);
        } else if (key == "lattice.scalar_cos_amplitude") {
            num(rc.scalar_cos_amplitude);
        } else if (key == "lattice.scalar_cos_axis") {
            inum(rc.scalar_cos_axis);
        } else if (key == "init.kind") {
            if (val == "zero") rc.init_kind = RunConfig::InitKind::zero;
            else if (val == "random") rc.init_kind = RunConfig::InitKind::random;
            else if (val == "snapshot") rc.init_kind = RunConfig::InitKind::snapshot;
            else throw std::runtime_error("config: init.kind must be zero|random|snapshot");
        } else if (key == "init.seed") {
            unum(rc.seed);
        } else if (key == "init.band_limit") {
            inum(rc.band_limit);
        } else if (key == "init.phi_amplitude") {
            num(rc.phi_amplitude);
        } else if (key == "init.a_amplitude") {
            num(rc.a_amplitude);
        } else if (key == "init.include_zero_mode") {
            rc.include_zero_mode = parse_bool(val, key);
        } else if (key == "init.snapshot") {
            rc.init_snapshot = val;
        } else if (key == "flow.mode") {
            if (val == "direct") rc.mode = FlowMode::direct;
            else if (val == "gauge_fixed") rc.mode = FlowMode::gauge_fixed;
            else throw std::runtime_error("config: flow.mode must be direct|gauge_fixed");
        } else if (key == "flow.integrator") {
            if (val == "euler") rc.integrator = Integrator::euler;
            else if (val == "rk4") rc.integrator = Integrator::rk4;
            else throw std::runtime_error("config: flow.integrator must be euler|rk4");
        } else if (key == "flow.dt_initial") {
            num(rc.dt_initial);
        } else if (key == "flow.cfl_safety") {
            num(rc.cfl_safety);
        } else if (key == "flow.t_max") {
            num(rc.t_max);
        } else if (key == "flow.grad_tol") {
            num(rc.grad_tol);
        } else if (key == "flow.monitor_stride") {
            inum(rc.monitor_stride);
        } else if (key == "flow.local_energy_radius") {
            num(rc.local_energy_R);
        } else if (key == "perturbation.enabled") {
            rc.pert_enabled = parse_bool(val, key);
        } else if (key == "perturbation.seed") {
            unum(rc.pert_seed);
        } else if (key == "perturbation.band_limit") {
            inum(rc.pert_band);
        } else if (key == "perturbation.amplitude") {
            num(rc.pert_amplitude);
        } else if (key == "perturbation.constant") {
            if (!(vs >> rc.pert_constant[0] >> rc.pert_constant[1] >> rc.pert_constant[2] >>
                  rc.pert_constant[3] >> rc.pert_constant[4] >> rc.pert_constant[5]))
                throw std::runtime_error("config: perturbation.constant needs 6 numbers");
            rc.pert_use_constant = true;
        } else if (key == "output.trace") {
            rc.trace_path = val;
        } else if (key == "output.snapshot") {
            rc.snapshot_path = val;
        } else if (key == "check.selection") {
            rc.check_selection.clear();
            std::string tok;
            while (vs >> tok) rc.check_selection.push_back(tok);
        } else if (key == "check.sizes") {
            rc.check_sizes.clear();
            int n;
            while (vs >> n) rc.check_sizes.push_back(n);
        } else if (key == "check.seed") {
            unum(rc.check_seed);
        } else {
            throw std::runtime_error("config: unknown key: " + key);
        }
    }
    return rc;
}

LatticeGeometry make_geometry(const RunConfig& rc) {
    LatticeGeometry g(rc.dims, rc.h);
    if (rc.scalar_constant != 0.0 || rc.scalar_cos_amplitude != 0.0) {
        if (rc.scalar_cos_axis < 1 || rc.scalar_cos_axis > 4)
            throw std::runtime_error("config: lattice.scalar_cos_axis must be 1..4");
        std::vector<double> S(g.volume());
        const int ax = rc.scalar_cos_axis - 1;
        for (std::size_t x = 0; x < g.volume(); ++x) {
            const auto c = g.coords(x);
            S[x] = rc.scalar_constant +
                   rc.scalar_cos_amplitude *
                       std::cos(2.0 * 3.14159265358979323846 * c[ax] / g.dims()[ax]);
        }
        g.set_scalar_curvature(std::move(S));
    }
    return g;
}

Configuration make_initial_configuration(const LatticeGeometry& g, const RunConfig& rc) {
    switch (rc.init_kind) {
        case RunConfig::InitKind::zero:
            return make_configuration(g);
        case RunConfig::InitKind::random:
            return random_configuration(g, rc.seed, rc.band_limit,
                                        Amplitudes{rc.phi_amplitude, rc.a_amplitude},
                                        rc.include_zero_mode);
        case RunConfig::InitKind::snapshot: {
            Snapshot s = snapshot_load(rc.init_snapshot);
            if (s.dims != g.dims())
                throw std::runtime_error("config: snapshot dims do not match lattice.dims");
            return std::move(s.cfg);
        }
    }
    throw std::logic_error("unreachable");
}

FlowParams make_flow_params(const LatticeGeometry& g, const RunConfig& rc) {
    FlowParams p;
    p.dt_initial = rc.dt_initial;
    p.cfl_safety = rc.cfl_safety;
    p.t_max = rc.t_max;
    p.grad_tol = rc.grad_tol;
    p.integrator = rc.integrator;
    p.monitor_stride = rc.monitor_stride;
    p.local_energy_R = rc.local_energy_R;
    p.mode = rc.mode;
    if (rc.pert_enabled) {
        TwoForm mu;
        if (rc.pert_use_constant) {
            mu = make_two_form(g, ValueTag::imaginary);
            for (std::size_t x = 0; x < g.volume(); ++x)
                for (int c = 0; c < 6; ++c) mu.c[6 * x + c] = rc.pert_constant[c];
        } else {
            SynthSpec sp;
            sp.seed = rc.pert_seed;
            sp.band_limit = rc.pert_band;
            sp.amplitude = rc.pert_amplitude;
            mu = random_two_form(g, sp, ValueTag::imaginary);
        }
        p.perturbation.emplace(g, std::move(mu), /*project=*/true);
    }
    p.validate(g);
    return p;
}

} // namespace swflow
