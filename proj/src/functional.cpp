#include "swflow/functional.hpp"

#include "swflow/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace swflow {

namespace {

double sd_defect(const TwoForm& mu) {
    const TwoForm st = hodge_star2(mu);
    double m = 0.0;
    for (std::size_t i = 0; i < mu.c.size(); ++i) m = std::max(m, std::abs(mu.c[i] - st.c[i]));
    return m;
}

} // namespace

Perturbation::Perturbation(const LatticeGeometry& g, TwoForm mu, bool project) {
    if (mu.c.size() != 6 * g.volume()) throw std::invalid_argument("perturbation: wrong 2-form size");
    if (mu.tag != ValueTag::imaginary) throw std::invalid_argument("perturbation: mu must be imaginary");
    if (project) {
        mu_ = selfdual_project(mu);
    } else {
        if (sd_defect(mu) > 1e-12) throw std::invalid_argument("perturbation: mu is not self-dual");
        mu_ = std::move(mu);
    }
}

TwoForm quadratic_map_field(const LatticeGeometry& g, const SpinorField& phi) {
    const auto& rep = gamma_rep();
    TwoForm out{std::vector<double>(6 * g.volume()), ValueTag::imaginary};
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const cplx p0 = phi.v[2 * x], p1 = phi.v[2 * x + 1];
            for (int p = 0; p < 6; ++p) {
                const cplx b0 = rep.biv[p][0][0] * p0 + rep.biv[p][0][1] * p1;
                const cplx b1 = rep.biv[p][1][0] * p0 + rep.biv[p][1][1] * p1;
                out.c[6 * x + p] = 0.25 * (std::conj(b0) * p0 + std::conj(b1) * p1).imag();
            }
        }
    });
    return out;
}

SpinorField form_action_field(const LatticeGeometry& g, const TwoForm& mu,
                              const SpinorField& phi) {
    if (mu.tag != ValueTag::imaginary) throw std::invalid_argument("form_action_field: mu must be imaginary");
    const auto& rep = gamma_rep();
    SpinorField out = make_spinor_field(g, phi.chi);
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const cplx p0 = phi.v[2 * x], p1 = phi.v[2 * x + 1];
            cplx s0(0.0), s1(0.0);
            for (int p = 0; p < 6; ++p) {
                const cplx w(0.0, 0.5 * mu.c[6 * x + p]);
                s0 += w * (rep.biv[p][0][0] * p0 + rep.biv[p][0][1] * p1);
                s1 += w * (rep.biv[p][1][0] * p0 + rep.biv[p][1][1] * p1);
            }
            out.v[2 * x] = s0;
            out.v[2 * x + 1] = s1;
        }
    });
    return out;
}

namespace {

// canonical / chern shared scalar pieces as per-site buffers
struct Densities {
    std::vector<double> dirichlet, sd, full, scalar, quartic;
};

Densities densities(const LatticeGeometry& g, const Configuration& cfg) {
    const SpinorOneForm gp = covariant_derivative(g, cfg);
    const TwoForm F = d1(g, cfg.a);
    const TwoForm Fp = selfdual_project(F);
    const auto& S = g.scalar_curvature();
    Densities d;
    d.dirichlet.resize(g.volume());
    d.sd.resize(g.volume());
    d.full.resize(g.volume());
    d.scalar.resize(g.volume());
    d.quartic.resize(g.volume());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            double dir = 0.0;
            for (int i = 0; i < 8; ++i) dir += std::norm(gp.v[8 * x + i]);
            double sd = 0.0, fl = 0.0;
            for (int p = 0; p < 6; ++p) {
                sd += Fp.c[6 * x + p] * Fp.c[6 * x + p];
                fl += F.c[6 * x + p] * F.c[6 * x + p];
            }
            const double n2 = std::norm(cfg.phi.v[2 * x]) + std::norm(cfg.phi.v[2 * x + 1]);
            d.dirichlet[x] = dir;
            d.sd[x] = sd;
            d.full[x] = 0.5 * fl;
            d.scalar[x] = 0.25 * S[x] * n2;
            d.quartic[x] = 0.125 * n2 * n2;
        }
    });
    return d;
}

} // namespace

EnergyBreakdown sw_energy(const LatticeGeometry& g, const Configuration& cfg) {
    const Densities d = densities(g, cfg);
    EnergyBreakdown e;
    e.form = EnergyForm::canonical;
    e.dirichlet = g.volume_weight() * pairwise_sum(d.dirichlet);
    e.curvature_sd = g.volume_weight() * pairwise_sum(d.sd);
    e.curvature_full = g.volume_weight() * pairwise_sum(d.full);
    e.scalar = g.volume_weight() * pairwise_sum(d.scalar);
    e.quartic = g.volume_weight() * pairwise_sum(d.quartic);
    e.total = e.dirichlet + e.curvature_sd + e.scalar + e.quartic;
    return e;
}

EnergyBreakdown sw_energy_chern(const LatticeGeometry& g, const Configuration& cfg) {
    EnergyBreakdown e = sw_energy(g, cfg);
    e.form = EnergyForm::chern;
    e.total = e.dirichlet + e.curvature_full + e.scalar + e.quartic;
    return e;
}

EnergyBreakdown sw_energy_dirac(const LatticeGeometry& g, const Configuration& cfg) {
    const SpinorField Dphi = dirac(g, cfg);
    const TwoForm Fp = curvature_plus(g, cfg);
    const TwoForm q = quadratic_map_field(g, cfg.phi);
    std::vector<double> dsq(g.volume()), msq(g.volume());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            dsq[x] = std::norm(Dphi.v[2 * x]) + std::norm(Dphi.v[2 * x + 1]);
            double m = 0.0;
            for (int p = 0; p < 6; ++p) {
                const double r = Fp.c[6 * x + p] - q.c[6 * x + p];
                m += r * r;
            }
            msq[x] = m;
        }
    });
    EnergyBreakdown e;
    e.form = EnergyForm::dirac;
    e.dirac_sq = g.volume_weight() * pairwise_sum(dsq);
    e.monopole_sq = g.volume_weight() * pairwise_sum(msq);
    e.total = e.dirac_sq + e.monopole_sq;
    return e;
}

TangentVector sw_gradient(const LatticeGeometry& g, const Configuration& cfg) {
    TangentVector out;
    out.psi = covariant_laplacian(g, cfg);
    const auto& S = g.scalar_curvature();
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const double n2 = std::norm(cfg.phi.v[2 * x]) + std::norm(cfg.phi.v[2 * x + 1]);
            const double c = 0.25 * (S[x] + n2);
            out.psi.v[2 * x] += c * cfg.phi.v[2 * x];
            out.psi.v[2 * x + 1] += c * cfg.phi.v[2 * x + 1];
        }
    });
    OneForm two_dstar_fp = codifferential2(g, curvature_plus(g, cfg));
    const OneForm J = current(g, cfg);
    for (std::size_t i = 0; i < two_dstar_fp.c.size(); ++i)
        two_dstar_fp.c[i] = 2.0 * two_dstar_fp.c[i] + J.c[i];
    out.b = std::move(two_dstar_fp);
    return out;
}

EnergyBreakdown sw_energy_perturbed(const LatticeGeometry& g, const Configuration& cfg,
                                    const Perturbation& pert) {
    EnergyBreakdown e = sw_energy(g, cfg);
    const TwoForm& mu = pert.mu();
    const SpinorField mp = form_action_field(g, mu, cfg.phi);
    const TwoForm Fp = curvature_plus(g, cfg);
    std::vector<double> mphi(g.volume()), mcross(g.volume()), msq(g.volume());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t en) {
        for (std::size_t x = b; x < en; ++x) {
            mphi[x] = (std::conj(mp.v[2 * x]) * cfg.phi.v[2 * x] +
                       std::conj(mp.v[2 * x + 1]) * cfg.phi.v[2 * x + 1]).real();
            double cr = 0.0, sq = 0.0;
            for (int p = 0; p < 6; ++p) {
                cr += Fp.c[6 * x + p] * mu.c[6 * x + p];
                sq += mu.c[6 * x + p] * mu.c[6 * x + p];
            }
            mcross[x] = -2.0 * cr;
            msq[x] = sq;
        }
    });
    e.mu_phi = g.volume_weight() * pairwise_sum(mphi);
    e.mu_cross = g.volume_weight() * pairwise_sum(mcross);
    e.mu_sq = g.volume_weight() * pairwise_sum(msq);
    e.total += e.mu_phi + e.mu_cross + e.mu_sq;
    return e;
}

TangentVector sw_gradient_perturbed(const LatticeGeometry& g, const Configuration& cfg,
                                    const Perturbation& pert) {
    TangentVector out = sw_gradient(g, cfg);
    const SpinorField mp = form_action_field(g, pert.mu(), cfg.phi);
    const OneForm dsmu = codifferential2(g, pert.mu());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            out.psi.v[2 * x] += mp.v[2 * x];
            out.psi.v[2 * x + 1] += mp.v[2 * x + 1];
            for (int j = 0; j < 4; ++j) out.b.c[4 * x + j] -= 2.0 * dsmu.c[4 * x + j];
        }
    });
    return out;
}

TangentVector hessian_vector(const LatticeGeometry& g, const Configuration& cfg,
                             const TangentVector& v) {
    const SpinorOneForm gphi = covariant_derivative(g, cfg);
    const Configuration vcfg{v.psi, cfg.a};
    const SpinorOneForm gpsi = covariant_derivative(g, vcfg);

    // delta(grad phi) = grad*_a(grad_a psi + Xi) + Theta
    //                   + (1/4)(S+|phi|^2) psi + (1/2) Re<phi,psi> phi
    // Xi_j = (1/2) b_j M_j phi ; Theta = -(1/2) sum_j M^b_j (b_j (grad phi)_j)
    SpinorOneForm om{std::vector<cplx>(8 * g.volume())};
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x)
            for (int j = 0; j < 4; ++j) {
                const std::size_t xj = g.up(x, j);
                const cplx bj(0.0, 0.5 * v.b.c[4 * x + j]);
                for (int c = 0; c < 2; ++c) {
                    const cplx mid = 0.5 * (cfg.phi.v[2 * x + c] + cfg.phi.v[2 * xj + c]);
                    om.v[8 * x + 2 * j + c] = gpsi.v[8 * x + 2 * j + c] + bj * mid;
                }
            }
    });
    TangentVector out;
    out.psi = covariant_derivative_adjoint(g, cfg.a, om);

    const auto& S = g.scalar_curvature();
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            // Theta
            cplx th0(0.0), th1(0.0);
            for (int j = 0; j < 4; ++j) {
                const std::size_t xd = g.dn(x, j);
                const cplx bx(0.0, v.b.c[4 * x + j]);
                const cplx bd(0.0, v.b.c[4 * xd + j]);
                th0 -= 0.25 * (bx * gphi.v[8 * x + 2 * j] + bd * gphi.v[8 * xd + 2 * j]);
                th1 -= 0.25 * (bx * gphi.v[8 * x + 2 * j + 1] + bd * gphi.v[8 * xd + 2 * j + 1]);
            }
            const cplx p0 = cfg.phi.v[2 * x], p1 = cfg.phi.v[2 * x + 1];
            const cplx s0 = v.psi.v[2 * x], s1 = v.psi.v[2 * x + 1];
            const double n2 = std::norm(p0) + std::norm(p1);
            const double rep = (std::conj(p0) * s0 + std::conj(p1) * s1).real();
            out.psi.v[2 * x] += th0 + 0.25 * (S[x] + n2) * s0 + 0.5 * rep * p0;
            out.psi.v[2 * x + 1] += th1 + 0.25 * (S[x] + n2) * s1 + 0.5 * rep * p1;
        }
    });

    // delta(grad a) = 2 d*(P+ d b) + delta J
    OneForm ha = codifferential2(g, selfdual_project(d1(g, v.b)));
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x)
            for (int j = 0; j < 4; ++j) {
                const std::size_t xj = g.up(x, j);
                cplx s(0.0);
                for (int c = 0; c < 2; ++c) {
                    const cplx midphi = 0.5 * (cfg.phi.v[2 * x + c] + cfg.phi.v[2 * xj + c]);
                    const cplx midpsi = 0.5 * (v.psi.v[2 * x + c] + v.psi.v[2 * xj + c]);
                    const cplx dpsi = gpsi.v[8 * x + 2 * j + c] + cplx(0.0, 0.5 * v.b.c[4 * x + j]) * midphi;
                    s += std::conj(midpsi) * gphi.v[8 * x + 2 * j + c] + std::conj(midphi) * dpsi;
                }
                ha.c[4 * x + j] = 2.0 * ha.c[4 * x + j] + s.imag();
            }
    });
    out.b = std::move(ha);
    return out;
}

TangentVector rho_rho_star(const LatticeGeometry& g, const Configuration& cfg,
                           const TangentVector& v) {
    TangentVector out = make_tangent(g);
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const cplx p0 = cfg.phi.v[2 * x], p1 = cfg.phi.v[2 * x + 1];
            const double im = (std::conj(v.psi.v[2 * x]) * p0 + std::conj(v.psi.v[2 * x + 1]) * p1).imag();
            const cplx lie(0.0, im); // i Im<psi,phi>, the Lie-algebra pairing
            out.psi.v[2 * x] = -0.5 * lie * p0;
            out.psi.v[2 * x + 1] = -0.5 * lie * p1;
        }
    });
    const OneForm dds = d0(g, codifferential1(g, v.b));
    for (std::size_t i = 0; i < dds.c.size(); ++i) out.b.c[i] = 0.5 * dds.c[i];
    return out;
}

TangentVector rho_infinitesimal(const LatticeGeometry& g, const Configuration& cfg,
                                const ZeroForm& theta) {
    const double inv_sqrt2 = 0.70710678118654752440;
    TangentVector out = make_tangent(g);
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const cplx u(0.0, theta.v[x]);
            out.psi.v[2 * x] = -inv_sqrt2 * u * cfg.phi.v[2 * x];
            out.psi.v[2 * x + 1] = -inv_sqrt2 * u * cfg.phi.v[2 * x + 1];
        }
    });
    const OneForm dth = d0(g, theta);
    for (std::size_t i = 0; i < dth.c.size(); ++i) out.b.c[i] = 2.0 * inv_sqrt2 * dth.c[i];
    return out;
}

double local_energy(const LatticeGeometry& g, const Configuration& cfg,
                    const std::vector<std::size_t>& sites) {
    const SpinorOneForm gp = covariant_derivative(g, cfg);
    const TwoForm F = d1(g, cfg.a);
    const auto& S = g.scalar_curvature();
    std::vector<double> buf(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const std::size_t x = sites[i];
        double dir = 0.0;
        for (int k = 0; k < 8; ++k) dir += std::norm(gp.v[8 * x + k]);
        double fl = 0.0;
        for (int p = 0; p < 6; ++p) fl += F.c[6 * x + p] * F.c[6 * x + p];
        const double n2 = std::norm(cfg.phi.v[2 * x]) + std::norm(cfg.phi.v[2 * x + 1]);
        buf[i] = dir + 0.5 * fl + 0.25 * S[x] * n2 + 0.125 * n2 * n2;
    }
    return g.volume_weight() * pairwise_sum(buf);
}

double local_energy(const LatticeGeometry& g, const Configuration& cfg,
                    std::size_t center, double R) {
    return local_energy(g, cfg, ball_sites(g, center, R));
}

double tangent_pairing(const LatticeGeometry& g, const TangentVector& u,
                       const TangentVector& v) {
    return 2.0 * spinor_field_inner(g, u.psi, v.psi).real() + inner(g, u.b, v.b);
}

double tangent_norm(const LatticeGeometry& g, const TangentVector& u) {
    return std::sqrt(tangent_pairing(g, u, u));
}

TangentVector axpy(double alpha, const TangentVector& x, const TangentVector& y) {
    TangentVector out = y;
    for (std::size_t i = 0; i < out.psi.v.size(); ++i) out.psi.v[i] += alpha * x.psi.v[i];
    for (std::size_t i = 0; i < out.b.c.size(); ++i) out.b.c[i] += alpha * x.b.c[i];
    return out;
}

} // namespace swflow
