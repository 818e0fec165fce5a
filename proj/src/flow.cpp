#include "swflow/flow.hpp"

#include "swflow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swflow {

namespace {

constexpr double kEnergySlack = 1e-12;
constexpr double kDtFloor = 1e-15;
constexpr double kGrowth = 1.2;
constexpr int kGrowthStreak = 50;

struct Rhs {
    TangentVector v;    // (phi., a.)
    ZeroForm theta_dot; // direct mode: identically zero
};

double flow_energy(const LatticeGeometry& g, const Configuration& cfg, const FlowParams& p) {
    return p.perturbation ? sw_energy_perturbed(g, cfg, *p.perturbation).total
                          : sw_energy(g, cfg).total;
}

TangentVector flow_gradient(const LatticeGeometry& g, const Configuration& cfg,
                            const FlowParams& p) {
    return p.perturbation ? sw_gradient_perturbed(g, cfg, *p.perturbation)
                          : sw_gradient(g, cfg);
}

Rhs rhs_direct(const LatticeGeometry& g, const FlowState& s, const FlowParams& p) {
    Rhs r{flow_gradient(g, s.cfg, p), ZeroForm{std::vector<double>(g.volume(), 0.0), ValueTag::real}};
    for (auto& z : r.v.psi.v) z = -z;
    for (auto& z : r.v.b.c) z = -z;
    return r;
}

Rhs rhs_gauge_fixed(const LatticeGeometry& g, const FlowState& s, const FlowParams& p) {
    Rhs r = rhs_direct(g, s, p);
    // w = coefficient of d* a~ (the value is i w). The gauge angle solves
    // 2 d(i theta)/dt = -d* a~, the reconstruction ODE that makes
    // (e^{i theta} phi~, a~ - 2 i d theta) solve the direct flow exactly in
    // the continuum; so theta. = (1/2) i d* a~ = -w/2.
    const ZeroForm w = codifferential1(g, s.cfg.a);
    const OneForm dw = d0(g, w);
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const cplx half_dstar_a(0.0, 0.5 * w.v[x]);
            r.v.psi.v[2 * x] += half_dstar_a * s.cfg.phi.v[2 * x];
            r.v.psi.v[2 * x + 1] += half_dstar_a * s.cfg.phi.v[2 * x + 1];
            for (int j = 0; j < 4; ++j) r.v.b.c[4 * x + j] -= dw.c[4 * x + j];
            r.theta_dot.v[x] = -0.5 * w.v[x];
        }
    });
    return r;
}

Rhs eval_rhs(const LatticeGeometry& g, const FlowState& s, const FlowParams& p, FlowMode mode) {
    return mode == FlowMode::direct ? rhs_direct(g, s, p) : rhs_gauge_fixed(g, s, p);
}

FlowState advance(const FlowState& s, const Rhs& k, double dt) {
    FlowState out = s;
    for (std::size_t i = 0; i < out.cfg.phi.v.size(); ++i) out.cfg.phi.v[i] += dt * k.v.psi.v[i];
    for (std::size_t i = 0; i < out.cfg.a.c.size(); ++i) out.cfg.a.c[i] += dt * k.v.b.c[i];
    for (std::size_t i = 0; i < out.theta.v.size(); ++i) out.theta.v[i] += dt * k.theta_dot.v[i];
    out.t = s.t + dt;
    return out;
}

void acc_rhs(Rhs& acc, const Rhs& k, double w) {
    for (std::size_t i = 0; i < acc.v.psi.v.size(); ++i) acc.v.psi.v[i] += w * k.v.psi.v[i];
    for (std::size_t i = 0; i < acc.v.b.c.size(); ++i) acc.v.b.c[i] += w * k.v.b.c[i];
    for (std::size_t i = 0; i < acc.theta_dot.v.size(); ++i) acc.theta_dot.v[i] += w * k.theta_dot.v[i];
}

FlowState propose(const LatticeGeometry& g, const FlowState& s, const FlowParams& p,
                  FlowMode mode, double dt) {
    if (p.integrator == Integrator::euler) {
        return advance(s, eval_rhs(g, s, p, mode), dt);
    }
    Rhs k1 = eval_rhs(g, s, p, mode);
    Rhs k2 = eval_rhs(g, advance(s, k1, 0.5 * dt), p, mode);
    Rhs k3 = eval_rhs(g, advance(s, k2, 0.5 * dt), p, mode);
    Rhs k4 = eval_rhs(g, advance(s, k3, dt), p, mode);
    acc_rhs(k1, k2, 2.0);
    acc_rhs(k1, k3, 2.0);
    acc_rhs(k1, k4, 1.0);
    // k1 now holds k1 + 2k2 + 2k3 + k4; the combination moves the fields by
    // dt/6 of it while time advances by the full dt
    FlowState out = advance(s, k1, dt / 6.0);
    out.t = s.t + dt;
    return out;
}

bool finite_state(const FlowState& s) {
    for (const cplx& z : s.cfg.phi.v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    for (double v : s.cfg.a.c)
        if (!std::isfinite(v)) return false;
    return true;
}

FlowStatus controlled_step(const LatticeGeometry& g, FlowState& s, const FlowParams& p,
                           FlowMode mode) {
    const double cap = p.dt_cap(g);
    const double e_old = flow_energy(g, s.cfg, p);
    for (;;) {
        if (s.dt < kDtFloor) return FlowStatus::aborted_dt_underflow;
        FlowState trial = propose(g, s, p, mode, s.dt);
        if (!finite_state(trial)) return FlowStatus::aborted_nonfinite;
        const double e_new = flow_energy(g, trial.cfg, p);
        if (e_new > e_old + kEnergySlack) {
            s.dt *= 0.5;
            s.accept_streak = 0;
            continue;
        }
        trial.dt = s.dt;
        trial.accept_streak = s.accept_streak + 1;
        if (trial.accept_streak >= kGrowthStreak) {
            trial.dt = std::min(trial.dt * kGrowth, cap);
            trial.accept_streak = 0;
        }
        trial.mode = mode;
        s = std::move(trial);
        return FlowStatus::running;
    }
}

} // namespace

double FlowParams::dt_cap(const LatticeGeometry& g) const {
    return cfl_safety * g.spacing() * g.spacing() / 8.0;
}

void FlowParams::validate(const LatticeGeometry& g) const {
    if (!(dt_initial > 0.0)) throw std::invalid_argument("flow: dt_initial must be positive");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw std::invalid_argument("flow: cfl_safety must lie in (0,1]");
    if (dt_initial > dt_cap(g) * (1.0 + 1e-12))
        throw std::invalid_argument("flow: dt_initial exceeds the CFL budget cfl_safety*h^2/8");
    if (!(grad_tol > 0.0)) throw std::invalid_argument("flow: grad_tol must be positive");
    if (monitor_stride < 1) throw std::invalid_argument("flow: monitor_stride must be positive");
}

FlowState make_flow_state(const LatticeGeometry& g, const Configuration& cfg0,
                          const FlowParams& p) {
    p.validate(g);
    FlowState s;
    s.cfg = cfg0;
    s.theta = ZeroForm{std::vector<double>(g.volume(), 0.0), ValueTag::real};
    s.dt = p.dt_initial;
    s.mode = p.mode;
    s.last_gradient = flow_gradient(g, cfg0, p);
    return s;
}

FlowStatus step_direct(const LatticeGeometry& g, FlowState& s, const FlowParams& p) {
    return controlled_step(g, s, p, FlowMode::direct);
}

FlowStatus step_gauge_fixed(const LatticeGeometry& g, FlowState& s, const FlowParams& p) {
    return controlled_step(g, s, p, FlowMode::gauge_fixed);
}

Configuration reconstruct_direct(const LatticeGeometry& g, const FlowState& s) {
    if (s.mode != FlowMode::gauge_fixed)
        throw std::invalid_argument("reconstruct_direct: state was not produced in gauge_fixed mode");
    Configuration out = s.cfg;
    const OneForm dth = d0(g, s.theta);
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const cplx ph = std::exp(cplx(0.0, s.theta.v[x]));
            out.phi.v[2 * x] *= ph;
            out.phi.v[2 * x + 1] *= ph;
            for (int j = 0; j < 4; ++j) out.a.c[4 * x + j] -= 2.0 * dth.c[4 * x + j];
        }
    });
    return out;
}

std::vector<std::size_t> default_ball_centers(const LatticeGeometry& g) {
    std::vector<std::size_t> out;
    const auto& n = g.dims();
    for (int b3 = 0; b3 < 2; ++b3)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int b1 = 0; b1 < 2; ++b1)
                for (int b0 = 0; b0 < 2; ++b0)
                    out.push_back(g.site(b0 * n[0] / 2, b1 * n[1] / 2, b2 * n[2] / 2, b3 * n[3] / 2));
    return out;
}

RunResult run_flow(const LatticeGeometry& g, const Configuration& cfg0, const FlowParams& p) {
    p.validate(g);
    RunResult res;
    res.state = make_flow_state(g, cfg0, p);
    res.trace.dims = g.dims();
    res.trace.h = g.spacing();
    res.trace.mode = p.mode;
    res.trace.integrator = p.integrator;

    const double R = p.local_energy_R > 0.0 ? p.local_energy_R : 0.25 * g.min_period();
    const std::vector<std::size_t> centers =
        p.ball_centers.empty() ? default_ball_centers(g) : p.ball_centers;
    std::vector<std::vector<std::size_t>> balls;
    balls.reserve(centers.size());
    for (std::size_t c : centers) balls.push_back(ball_sites(g, c, R));

    auto record = [&](const FlowState& s) {
        TraceRow row;
        row.t = s.t;
        row.energy = flow_energy(g, s.cfg, p);
        row.dissipation_rate = tangent_pairing(g, s.last_gradient, s.last_gradient);
        row.grad_norm = std::sqrt(row.dissipation_rate);
        row.sup_phi = sup_norm(s.cfg.phi);
        double lmax = 0.0;
        for (const auto& sites : balls) lmax = std::max(lmax, local_energy(g, s.cfg, sites));
        row.local_energy_max = lmax;
        row.dt = s.dt;
        res.trace.rows.push_back(row);
        return row;
    };

    FlowState& s = res.state;
    TraceRow row = record(s);
    int since_record = 0;
    for (;;) {
        if (row.grad_norm < p.grad_tol) {
            res.status = FlowStatus::converged;
            res.message = "gradient norm below tolerance";
            break;
        }
        if (s.t >= p.t_max) {
            res.status = FlowStatus::time_limit;
            res.message = "reached t_max";
            break;
        }
        const FlowStatus st = controlled_step(g, s, p, p.mode);
        if (st == FlowStatus::aborted_dt_underflow) {
            res.status = st;
            res.message = "step size underflow: energy control kept rejecting steps";
            break;
        }
        if (st == FlowStatus::aborted_nonfinite) {
            res.status = st;
            res.message = "non-finite field values encountered";
            break;
        }
        s.last_gradient = flow_gradient(g, s.cfg, p);
        if (++since_record >= p.monitor_stride) {
            row = record(s);
            since_record = 0;
        } else {
            row.grad_norm = tangent_norm(g, s.last_gradient);
        }
    }
    if (since_record != 0) record(s);
    return res;
}

RateFitResult fit_rate(const FlowTrace& trace, double E_inf, double t_lo, double t_hi) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw std::domain_error("fit_rate: window must satisfy 0 < t_lo < t_hi");
    std::vector<double> xs, ys;
    for (const auto& r : trace.rows) {
        if (r.t < t_lo || r.t > t_hi) continue;
        const double dE = r.energy - E_inf;
        if (dE <= 0.0) throw std::domain_error("fit_rate: energy - E_inf not positive in window");
        xs.push_back(std::log(r.t));
        ys.push_back(std::log(dE));
    }
    if (xs.size() < 20) throw std::domain_error("fit_rate: fewer than 20 usable rows in window");
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::domain_error("fit_rate: degenerate window (no time spread)");
    double ylo = ys[0], yhi = ys[0];
    for (double y : ys) {
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }
    if (yhi - ylo <= 1e-12)
        throw std::domain_error("fit_rate: energy does not decay over the window");
    const double slope = sxy / sxx;
    if (slope >= 0.0) throw std::domain_error("fit_rate: energy does not decay over the window");
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (my + slope * (xs[i] - mx));
        ss += r * r;
    }
    RateFitResult out;
    out.slope = slope;
    out.gamma_hat = 0.5 * (1.0 - 1.0 / slope);
    out.t_lo = t_lo;
    out.t_hi = t_hi;
    out.residual = std::sqrt(ss / n);
    return out;
}

} // namespace swflow
