#pragma once

#include "swflow/calculus.hpp"
#include "swflow/clifford.hpp"
#include "swflow/lattice.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace swflow {

// One W+ (or W-) fibre value per site, components interleaved [site*2 + c].
struct SpinorField {
    std::vector<cplx> v;
    Chirality chi = Chirality::plus;
};

// A point (phi, a) of the configuration space. A = A0 + a with A0 = 0 on the
// trivial bundle, so the curvature F = d a is globally exact. The connection
// form is imaginary-tagged: a stores w with value i*w.
struct Configuration {
    SpinorField phi;
    OneForm a;
};

// g = e^{i theta} pointwise, theta real.
struct GaugeFunction {
    ZeroForm theta;
};

// Tangent direction (psi, b) at a configuration.
struct TangentVector {
    SpinorField psi;
    OneForm b;
};

// Spinor-valued one-form, [site*8 + dir*2 + c].
struct SpinorOneForm {
    std::vector<cplx> v;
};

SpinorField make_spinor_field(const LatticeGeometry& g, Chirality chi = Chirality::plus);
Configuration make_configuration(const LatticeGeometry& g);
TangentVector make_tangent(const LatticeGeometry& g);

double sup_norm(const SpinorField& phi);
// <u,v>_L2 summed with volume weight, deterministic reduction.
cplx spinor_field_inner(const LatticeGeometry& g, const SpinorField& u, const SpinorField& v);
double spinor_field_norm2(const LatticeGeometry& g, const SpinorField& u);
double spinor_one_form_norm2(const LatticeGeometry& g, const SpinorOneForm& om);

// (grad_A phi)_j(x) = (phi(x+j) - phi(x))/h + (1/2) a_j(x) * (phi(x)+phi(x+j))/2.
// The 1/2 on a is the weight of the determinant-line connection on spinors; the
// edge-midpoint average makes the zeroth-order term second-order accurate at
// the edge and makes the functional's a-gradient exactly the discrete current.
SpinorOneForm covariant_derivative(const LatticeGeometry& g, const Configuration& cfg);
// Exact discrete adjoint of covariant_derivative at the same connection.
SpinorField covariant_derivative_adjoint(const LatticeGeometry& g, const OneForm& a,
                                         const SpinorOneForm& om);
SpinorField covariant_laplacian(const LatticeGeometry& g, const Configuration& cfg);

SpinorField dirac(const LatticeGeometry& g, const Configuration& cfg);
SpinorField dirac_adjoint(const LatticeGeometry& g, const Configuration& cfg,
                          const SpinorField& chi);

TwoForm curvature(const LatticeGeometry& g, const Configuration& cfg);
TwoForm curvature_plus(const LatticeGeometry& g, const Configuration& cfg);

// J_j(x) = i Im< (phi(x)+phi(x+j))/2 , (grad_A phi)_j(x) >, purely imaginary;
// the exact a-derivative of the Dirichlet term.
OneForm current(const LatticeGeometry& g, const Configuration& cfg);

// g*(phi, a) = (e^{-i theta} phi, a + 2 i d0 theta).
Configuration gauge_apply(const LatticeGeometry& g, const GaugeFunction& gf,
                          const Configuration& cfg);
// Gauge rotation of an edge-based spinor one-form: multiplies component j by
// the edge-midpoint phase (e^{-i theta(x)} + e^{-i theta(x+j)})/2. Used by the
// covariance diagnostics; second-order accurate representative of e^{-i theta}
// on the edge.
SpinorOneForm gauge_apply_edge(const LatticeGeometry& g, const GaugeFunction& gf,
                               const SpinorOneForm& om);

// Deterministic band-limited Fourier synthesis. The coefficient stream depends
// only on (seed, band_limit, include_zero_mode), never on the lattice size, so
// the same seed on refined grids samples the same continuum field. Modes are
// weighted by exp(-decay * |k|^2); the result is normalised to unit RMS before
// scaling by amplitude.
struct SynthSpec {
    std::uint64_t seed = 1;
    int band_limit = 1;
    double amplitude = 1.0;
    bool include_zero_mode = true;
    double decay = 0.0;
};

ZeroForm random_zero_form(const LatticeGeometry& g, const SynthSpec& s);
OneForm random_one_form(const LatticeGeometry& g, const SynthSpec& s,
                        ValueTag tag = ValueTag::imaginary);
TwoForm random_two_form(const LatticeGeometry& g, const SynthSpec& s,
                        ValueTag tag = ValueTag::imaginary);
SpinorField random_spinor_field(const LatticeGeometry& g, const SynthSpec& s);

struct Amplitudes {
    double phi = 1.0;
    double a = 1.0;
};

// Band-limited random initial data; uses seed streams seed, seed+1, ... for the
// successive real component fields.
Configuration random_configuration(const LatticeGeometry& g, std::uint64_t seed,
                                   int band_limit, const Amplitudes& amp,
                                   bool include_zero_mode = true);
TangentVector random_tangent(const LatticeGeometry& g, std::uint64_t seed,
                             int band_limit, const Amplitudes& amp);

} // namespace swflow
