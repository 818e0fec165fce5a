#include "swflow/fields.hpp"

#include "swflow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace swflow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_spinor(const LatticeGeometry& g, const SpinorField& f, const char* who) {
    if (f.v.size() != 2 * g.volume()) throw std::invalid_argument(std::string(who) + ": wrong spinor field size");
}

void check_imaginary_one_form(const LatticeGeometry& g, const OneForm& a, const char* who) {
    if (a.c.size() != 4 * g.volume()) throw std::invalid_argument(std::string(who) + ": wrong 1-form size");
    if (a.tag != ValueTag::imaginary) throw std::invalid_argument(std::string(who) + ": connection form must be imaginary");
}

} // namespace

SpinorField make_spinor_field(const LatticeGeometry& g, Chirality chi) {
    return SpinorField{std::vector<cplx>(2 * g.volume(), cplx(0.0)), chi};
}

Configuration make_configuration(const LatticeGeometry& g) {
    return Configuration{make_spinor_field(g), make_one_form(g, ValueTag::imaginary)};
}

TangentVector make_tangent(const LatticeGeometry& g) {
    return TangentVector{make_spinor_field(g), make_one_form(g, ValueTag::imaginary)};
}

double sup_norm(const SpinorField& phi) {
    double m = 0.0;
    for (std::size_t x = 0; x * 2 < phi.v.size(); ++x)
        m = std::max(m, std::norm(phi.v[2 * x]) + std::norm(phi.v[2 * x + 1]));
    return std::sqrt(m);
}

cplx spinor_field_inner(const LatticeGeometry& g, const SpinorField& u, const SpinorField& v) {
    check_spinor(g, u, "spinor_field_inner");
    check_spinor(g, v, "spinor_field_inner");
    if (u.chi != v.chi) throw std::invalid_argument("spinor_field_inner: chirality mismatch");
    std::vector<double> re(g.volume()), im(g.volume());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            cplx s = std::conj(u.v[2 * x]) * v.v[2 * x] + std::conj(u.v[2 * x + 1]) * v.v[2 * x + 1];
            re[x] = s.real();
            im[x] = s.imag();
        }
    });
    return g.volume_weight() * cplx(pairwise_sum(re), pairwise_sum(im));
}

double spinor_field_norm2(const LatticeGeometry& g, const SpinorField& u) {
    check_spinor(g, u, "spinor_field_norm2");
    std::vector<double> buf(g.volume());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x)
            buf[x] = std::norm(u.v[2 * x]) + std::norm(u.v[2 * x + 1]);
    });
    return g.volume_weight() * pairwise_sum(buf);
}

double spinor_one_form_norm2(const LatticeGeometry& g, const SpinorOneForm& om) {
    if (om.v.size() != 8 * g.volume()) throw std::invalid_argument("spinor_one_form_norm2: wrong size");
    std::vector<double> buf(g.volume());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            double s = 0.0;
            for (int i = 0; i < 8; ++i) s += std::norm(om.v[8 * x + i]);
            buf[x] = s;
        }
    });
    return g.volume_weight() * pairwise_sum(buf);
}

SpinorOneForm covariant_derivative(const LatticeGeometry& g, const Configuration& cfg) {
    check_spinor(g, cfg.phi, "covariant_derivative");
    check_imaginary_one_form(g, cfg.a, "covariant_derivative");
    SpinorOneForm out{std::vector<cplx>(8 * g.volume())};
    const double ih = 1.0 / g.spacing();
    const cplx* phi = cfg.phi.v.data();
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x)
            for (int j = 0; j < 4; ++j) {
                const std::size_t xj = g.up(x, j);
                const cplx aj(0.0, 0.5 * cfg.a.c[4 * x + j]);
                for (int c = 0; c < 2; ++c) {
                    const cplx here = phi[2 * x + c], there = phi[2 * xj + c];
                    out.v[8 * x + 2 * j + c] = (there - here) * ih + aj * (0.5 * (here + there));
                }
            }
    });
    return out;
}

SpinorField covariant_derivative_adjoint(const LatticeGeometry& g, const OneForm& a,
                                         const SpinorOneForm& om) {
    check_imaginary_one_form(g, a, "covariant_derivative_adjoint");
    if (om.v.size() != 8 * g.volume()) throw std::invalid_argument("covariant_derivative_adjoint: wrong size");
    SpinorField out = make_spinor_field(g);
    const double ih = 1.0 / g.spacing();
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x)
            for (int c = 0; c < 2; ++c) {
                cplx s(0.0);
                for (int j = 0; j < 4; ++j) {
                    const std::size_t xd = g.dn(x, j);
                    const cplx wj = om.v[8 * x + 2 * j + c];
                    const cplx wd = om.v[8 * xd + 2 * j + c];
                    // -D^b_j om_j - (1/2) M^b_j (a_j om_j)
                    s += (wd - wj) * ih;
                    s -= 0.25 * (cplx(0.0, a.c[4 * x + j]) * wj + cplx(0.0, a.c[4 * xd + j]) * wd);
                }
                out.v[2 * x + c] = s;
            }
    });
    return out;
}

SpinorField covariant_laplacian(const LatticeGeometry& g, const Configuration& cfg) {
    return covariant_derivative_adjoint(g, cfg.a, covariant_derivative(g, cfg));
}

SpinorField dirac(const LatticeGeometry& g, const Configuration& cfg) {
    const SpinorOneForm gp = covariant_derivative(g, cfg);
    const auto& rep = gamma_rep();
    SpinorField out = make_spinor_field(g, Chirality::minus);
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            cplx s0(0.0), s1(0.0);
            for (int j = 0; j < 4; ++j) {
                const cplx w0 = gp.v[8 * x + 2 * j], w1 = gp.v[8 * x + 2 * j + 1];
                s0 += rep.gamma[j][0][0] * w0 + rep.gamma[j][0][1] * w1;
                s1 += rep.gamma[j][1][0] * w0 + rep.gamma[j][1][1] * w1;
            }
            out.v[2 * x] = s0;
            out.v[2 * x + 1] = s1;
        }
    });
    return out;
}

SpinorField dirac_adjoint(const LatticeGeometry& g, const Configuration& cfg,
                          const SpinorField& chi) {
    check_spinor(g, chi, "dirac_adjoint");
    if (chi.chi != Chirality::minus) throw std::invalid_argument("dirac_adjoint: W- field expected");
    const auto& rep = gamma_rep();
    SpinorOneForm om{std::vector<cplx>(8 * g.volume())};
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const cplx c0 = chi.v[2 * x], c1 = chi.v[2 * x + 1];
            for (int j = 0; j < 4; ++j) {
                // gamma_j^dag chi
                om.v[8 * x + 2 * j] = std::conj(rep.gamma[j][0][0]) * c0 + std::conj(rep.gamma[j][1][0]) * c1;
                om.v[8 * x + 2 * j + 1] = std::conj(rep.gamma[j][0][1]) * c0 + std::conj(rep.gamma[j][1][1]) * c1;
            }
        }
    });
    return covariant_derivative_adjoint(g, cfg.a, om);
}

TwoForm curvature(const LatticeGeometry& g, const Configuration& cfg) {
    return d1(g, cfg.a);
}

TwoForm curvature_plus(const LatticeGeometry& g, const Configuration& cfg) {
    return selfdual_project(d1(g, cfg.a));
}

OneForm current(const LatticeGeometry& g, const Configuration& cfg) {
    const SpinorOneForm gp = covariant_derivative(g, cfg);
    OneForm out{std::vector<double>(4 * g.volume()), ValueTag::imaginary};
    const cplx* phi = cfg.phi.v.data();
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x)
            for (int j = 0; j < 4; ++j) {
                const std::size_t xj = g.up(x, j);
                cplx s(0.0);
                for (int c = 0; c < 2; ++c) {
                    const cplx mid = 0.5 * (phi[2 * x + c] + phi[2 * xj + c]);
                    s += std::conj(mid) * gp.v[8 * x + 2 * j + c];
                }
                out.c[4 * x + j] = s.imag();
            }
    });
    return out;
}

Configuration gauge_apply(const LatticeGeometry& g, const GaugeFunction& gf,
                          const Configuration& cfg) {
    if (gf.theta.v.size() != g.volume()) throw std::invalid_argument("gauge_apply: wrong theta size");
    Configuration out = cfg;
    const OneForm dth = d0(g, gf.theta);
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const cplx ph = std::exp(cplx(0.0, -gf.theta.v[x]));
            out.phi.v[2 * x] *= ph;
            out.phi.v[2 * x + 1] *= ph;
            for (int j = 0; j < 4; ++j) out.a.c[4 * x + j] += 2.0 * dth.c[4 * x + j];
        }
    });
    return out;
}

SpinorOneForm gauge_apply_edge(const LatticeGeometry& g, const GaugeFunction& gf,
                               const SpinorOneForm& om) {
    SpinorOneForm out{std::vector<cplx>(8 * g.volume())};
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x)
            for (int j = 0; j < 4; ++j) {
                const cplx ph = 0.5 * (std::exp(cplx(0.0, -gf.theta.v[x])) +
                                       std::exp(cplx(0.0, -gf.theta.v[g.up(x, j)])));
                out.v[8 * x + 2 * j] = ph * om.v[8 * x + 2 * j];
                out.v[8 * x + 2 * j + 1] = ph * om.v[8 * x + 2 * j + 1];
            }
    });
    return out;
}

// --- band-limited synthesis ---------------------------------------------

namespace {

struct Mode {
    int k[4];
    double c, s; // cos and sin coefficients, decay-weighted
};

std::vector<Mode> draw_modes(const SynthSpec& sp) {
    std::mt19937_64 rng(sp.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Mode> modes;
    const int B = sp.band_limit;
    double sum2 = 0.0;
    for (int k0 = -B; k0 <= B; ++k0)
        for (int k1 = -B; k1 <= B; ++k1)
            for (int k2 = -B; k2 <= B; ++k2)
                for (int k3 = -B; k3 <= B; ++k3) {
                    const bool zero = k0 == 0 && k1 == 0 && k2 == 0 && k3 == 0;
                    double a = gauss(rng), b = gauss(rng); // always consume the stream
                    if (zero && !sp.include_zero_mode) continue;
                    const double w = std::exp(-sp.decay * (k0 * k0 + k1 * k1 + k2 * k2 + k3 * k3));
                    Mode m{{k0, k1, k2, k3}, w * a, w * b};
                    sum2 += 0.5 * w * w * (a * a + b * b) * (zero ? 2.0 : 1.0);
                    modes.push_back(m);
                }
    const double scale = sum2 > 0.0 ? sp.amplitude / std::sqrt(sum2) : 0.0;
    for (auto& m : modes) {
        m.c *= scale;
        m.s *= scale;
    }
    return modes;
}

// f(x) = sum_k c_k cos(2 pi k.x / N) + s_k sin(...): depends on x/N only, so
// shared-seed fields agree at shared sites across refinements.
std::vector<double> synth_scalar(const LatticeGeometry& g, const SynthSpec& sp) {
    const auto modes = draw_modes(sp);
    std::vector<double> out(g.volume(), 0.0);
    const auto& n = g.dims();
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            const auto xc = g.coords(x);
            double acc = 0.0;
            for (const auto& m : modes) {
                const double ph = kTwoPi * (double(m.k[0]) * xc[0] / n[0] + double(m.k[1]) * xc[1] / n[1] +
                                            double(m.k[2]) * xc[2] / n[2] + double(m.k[3]) * xc[3] / n[3]);
                acc += m.c * std::cos(ph) + m.s * std::sin(ph);
            }
            out[x] = acc;
        }
    });
    return out;
}

int check_band(const LatticeGeometry& g, const SynthSpec& sp) {
    const int maxb = *std::min_element(g.dims().begin(), g.dims().end()) / 2 - 1;
    if (sp.band_limit < 0 || sp.band_limit > maxb)
        throw std::invalid_argument("synthesis: band_limit above the grid Nyquist margin");
    return maxb;
}

} // namespace

ZeroForm random_zero_form(const LatticeGeometry& g, const SynthSpec& sp) {
    check_band(g, sp);
    return ZeroForm{synth_scalar(g, sp), ValueTag::real};
}

OneForm random_one_form(const LatticeGeometry& g, const SynthSpec& sp, ValueTag tag) {
    check_band(g, sp);
    OneForm out{std::vector<double>(4 * g.volume()), tag};
    SynthSpec s = sp;
    for (int j = 0; j < 4; ++j) {
        const auto comp = synth_scalar(g, s);
        s.seed += 1;
        for (std::size_t x = 0; x < g.volume(); ++x) out.c[4 * x + j] = comp[x];
    }
    return out;
}

TwoForm random_two_form(const LatticeGeometry& g, const SynthSpec& sp, ValueTag tag) {
    check_band(g, sp);
    TwoForm out{std::vector<double>(6 * g.volume()), tag};
    SynthSpec s = sp;
    for (int p = 0; p < 6; ++p) {
        const auto comp = synth_scalar(g, s);
        s.seed += 1;
        for (std::size_t x = 0; x < g.volume(); ++x) out.c[6 * x + p] = comp[x];
    }
    return out;
}

SpinorField random_spinor_field(const LatticeGeometry& g, const SynthSpec& sp) {
    check_band(g, sp);
    SpinorField out = make_spinor_field(g);
    SynthSpec s = sp;
    for (int c = 0; c < 2; ++c) {
        const auto re = synth_scalar(g, s);
        s.seed += 1;
        const auto im = synth_scalar(g, s);
        s.seed += 1;
        for (std::size_t x = 0; x < g.volume(); ++x) out.v[2 * x + c] = cplx(re[x], im[x]);
    }
    return out;
}

Configuration random_configuration(const LatticeGeometry& g, std::uint64_t seed,
                                   int band_limit, const Amplitudes& amp,
                                   bool include_zero_mode) {
    SynthSpec sp;
    sp.seed = seed;
    sp.band_limit = band_limit;
    sp.include_zero_mode = include_zero_mode;
    sp.amplitude = amp.phi;
    Configuration out;
    out.phi = random_spinor_field(g, sp);
    sp.seed = seed + 4;
    sp.amplitude = amp.a;
    out.a = random_one_form(g, sp, ValueTag::imaginary);
    return out;
}

TangentVector random_tangent(const LatticeGeometry& g, std::uint64_t seed,
                             int band_limit, const Amplitudes& amp) {
    const Configuration c = random_configuration(g, seed, band_limit, amp);
    return TangentVector{c.phi, c.a};
}

} // namespace swflow
