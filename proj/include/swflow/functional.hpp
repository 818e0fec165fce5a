#pragma once

#include "swflow/fields.hpp"

#include <optional>

namespace swflow {

enum class EnergyForm { canonical, dirac, chern };

// Term-by-term account of one energy evaluation; total is the sum of the
// terms of the form that was evaluated, all site sums volume-weighted.
struct EnergyBreakdown {
    EnergyForm form = EnergyForm::canonical;
    double total = 0.0;
    double dirichlet = 0.0;      // int |grad_A phi|^2
    double curvature_sd = 0.0;   // int |F+|^2
    double curvature_full = 0.0; // (1/2) int |F|^2 (chern form)
    double scalar = 0.0;         // int (S/4) |phi|^2
    double quartic = 0.0;        // int (1/8) |phi|^4
    double dirac_sq = 0.0;       // int |D_A phi|^2 (dirac form)
    double monopole_sq = 0.0;    // int |F+ - q(phi)|^2 (dirac form)
    double mu_phi = 0.0;         // int <mu.phi, phi>   (perturbed)
    double mu_cross = 0.0;       // -2 int <F+, mu>     (perturbed)
    double mu_sq = 0.0;          // int |mu|^2          (perturbed)
};

// Fixed imaginary self-dual 2-form. Construction rejects non-self-dual input
// unless project is set, in which case the self-dual part is taken.
class Perturbation {
public:
    Perturbation(const LatticeGeometry& g, TwoForm mu, bool project = false);
    const TwoForm& mu() const { return mu_; }

private:
    TwoForm mu_;
};

// Canonical energy: int |grad_A phi|^2 + |F+|^2 + (S/4)|phi|^2 + (1/8)|phi|^4.
// This is the energy the flow descends.
EnergyBreakdown sw_energy(const LatticeGeometry& g, const Configuration& cfg);
// Diagnostic Dirac form: int |D_A phi|^2 + |F+ - q(phi)|^2. Agrees with
// sw_energy in the continuum; discretely the gap shrinks at first order.
EnergyBreakdown sw_energy_dirac(const LatticeGeometry& g, const Configuration& cfg);
// int |grad_A phi|^2 + (1/2)|F|^2 + (S/4)|phi|^2 + (1/8)|phi|^4 (c1 = 0).
EnergyBreakdown sw_energy_chern(const LatticeGeometry& g, const Configuration& cfg);

// Exact derivative of the discrete sw_energy: for every tangent (psi, b),
//   d/ds E(cfg + s (psi,b)) = 2 Re<grad_phi, psi>_L2 + <grad_a, b>_L2
// to machine precision, with
//   grad_phi = grad*_A grad_A phi + (1/4)(S + |phi|^2) phi
//   grad_a   = 2 d*(F+) + current.
// 2 d*(F+) is the exact discrete derivative of int |F+|^2; it equals d*F up to
// d*(*F), which vanishes in the continuum for exact F (the flow equations'
// d*F form) but not identically on the lattice.
TangentVector sw_gradient(const LatticeGeometry& g, const Configuration& cfg);

// Perturbed energy: adds int <mu.phi,phi> - 2<F+,mu> + |mu|^2 (the expansion
// of |F+ - q - mu|^2 + |D phi|^2 in canonical-form terms). Its exact gradient
// adds mu.phi to grad_phi and -2 d* mu to grad_a, and reduces to sw_gradient
// at mu = 0.
EnergyBreakdown sw_energy_perturbed(const LatticeGeometry& g, const Configuration& cfg,
                                    const Perturbation& mu);
TangentVector sw_gradient_perturbed(const LatticeGeometry& g, const Configuration& cfg,
                                    const Perturbation& mu);

// Matrix-free Hessian-vector product: the exact derivative of sw_gradient at
// cfg in direction v, symmetric under the gradient pairing
// <<(psi,a),(psi',a')>> = 2 Re<psi,psi'> + <a,a'>.
TangentVector hessian_vector(const LatticeGeometry& g, const Configuration& cfg,
                             const TangentVector& v);

// rho_inf rho_inf^*(psi, a) = (1/2)(-<psi,phi_inf> phi_inf, d d* a), with
// <psi,phi_inf> the pointwise Lie-algebra pairing i Im<psi,phi_inf>.
TangentVector rho_rho_star(const LatticeGeometry& g, const Configuration& cfg,
                           const TangentVector& v);

// Infinitesimal gauge action rho_inf(u) = (1/sqrt 2)(-u phi_inf, 2 du) for
// u = i*theta in the Lie algebra (theta real).
TangentVector rho_infinitesimal(const LatticeGeometry& g, const Configuration& cfg,
                                const ZeroForm& theta);

// The chern-form integrand summed over ball_sites(center, R) only.
double local_energy(const LatticeGeometry& g, const Configuration& cfg,
                    std::size_t center, double R);
double local_energy(const LatticeGeometry& g, const Configuration& cfg,
                    const std::vector<std::size_t>& sites);

// Pairing used by the gradient contract and the dissipation identity:
// <<u, v>> = 2 Re<psi_u, psi_v> + <b_u, b_v>.
double tangent_pairing(const LatticeGeometry& g, const TangentVector& u,
                       const TangentVector& v);
double tangent_norm(const LatticeGeometry& g, const TangentVector& u);

TangentVector axpy(double alpha, const TangentVector& x, const TangentVector& y);

// q(phi) as a lattice field of imaginary self-dual 2-form values.
TwoForm quadratic_map_field(const LatticeGeometry& g, const SpinorField& phi);
// mu . phi sitewise (form_action of an imaginary 2-form field on a spinor field).
SpinorField form_action_field(const LatticeGeometry& g, const TwoForm& mu,
                              const SpinorField& phi);

} // namespace swflow
