#pragma once

#include <array>
#include <complex>

namespace swflow {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

enum class Chirality { plus, minus };

// A fibre value of one of the half spinor bundles. Spinor inner products are
// conjugate-linear in the first slot: <u,v> = sum conj(u_c) v_c.
struct SpinorValue {
    std::array<cplx, 2> c{{0.0, 0.0}};
    Chirality chi = Chirality::plus;
};

// Concrete Spin(4) representation. gamma[j] realises Clifford multiplication
// by e_{j+1} as a map W+ -> W-; on W- the same vector acts by -gamma[j]^dag.
// The derived table biv[p] is the action of e_j e_k on W+ for the pair order
// (12,13,14,23,24,34); biv[p] = -gamma[j]^dag gamma[k].
//
// Matrix entries (gamma1..3 the Pauli matrices, gamma4 = i*Id):
//   gamma1 = [[0,1],[1,0]]   gamma2 = [[0,-i],[i,0]]
//   gamma3 = [[1,0],[0,-1]]  gamma4 = [[i,0],[0,i]]
// Correctness is defined by the axiom suite (anticommutation, skew-adjointness,
// chirality e1e2e3e4 = -Id on W+, anti-Hermitian trace-free bivectors) plus the
// two convention locks below, not by these particular entries.
struct GammaRep {
    std::array<Mat2, 4> gamma;
    std::array<Mat2, 6> biv;
};

const GammaRep& gamma_rep();

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_dagger(const Mat2& a);
SpinorValue apply(const Mat2& m, const SpinorValue& s);

// gamma_j phi, W+ -> W-. Axes j are 1-based (1..4).
SpinorValue clifford_mul(int j, const SpinorValue& phi);
// e_j e_k phi on W+, j != k (antisymmetric in j,k).
SpinorValue bivector_mul(int j, int k, const SpinorValue& phi);

// Imaginary self-dual 2-form value, stored as the coefficients w_p of i*w_p
// in the pair order above.
using TwoFormValue = std::array<double, 6>;

// q(phi)_{jk} = (1/4) <e_j e_k phi, phi>: purely imaginary, self-dual, and
// |q(phi)|^2 = |phi|^4 / 8 under the single-count 2-form norm
// |beta|^2 = sum_{j<k} |beta_jk|^2.
TwoFormValue quadratic_map(const SpinorValue& phi);

// mu . phi = (1/2) sum_{j<k} mu_jk (e_j e_k phi). The 1/2 makes the pairing
// lock <q(phi).phi, phi> = 2 |q(phi)|^2 hold together with the norm convention
// above (the paper sums over repeated indices, which double-counts each pair);
// with it, mu . phi for self-dual imaginary mu is a Hermitian action and
// <mu.phi, phi> = 2 <mu, q(phi)>.
SpinorValue form_action(const TwoFormValue& mu, const SpinorValue& phi);

double spinor_norm2(const SpinorValue& s);
cplx spinor_inner(const SpinorValue& u, const SpinorValue& v);

} // namespace swflow
