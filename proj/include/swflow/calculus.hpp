#pragma once

#include "swflow/lattice.hpp"

#include <vector>

namespace swflow {

// Discrete exterior calculus on the periodic 4-torus.
//
// d is the forward difference, d* its exact adjoint with respect to the
// volume-weighted site sums below (backward difference), so d.d = 0 and
// summation by parts hold to machine precision. The Hodge Laplacian
// dd* + d*d follows the paper's sign (positive semidefinite; d*d0 on
// ZeroForms is the positive 9-point stencil).

OneForm d0(const LatticeGeometry& g, const ZeroForm& f);
TwoForm d1(const LatticeGeometry& g, const OneForm& a);
ZeroForm codifferential1(const LatticeGeometry& g, const OneForm& a);
OneForm codifferential2(const LatticeGeometry& g, const TwoForm& b);

// * swaps (1,2)<->(3,4), (1,3)<->-(2,4), (1,4)<->(2,3); involutive isometry
// for the orientation e1^e2^e3^e4 > 0.
TwoForm hodge_star2(const TwoForm& b);
TwoForm selfdual_project(const TwoForm& b);

// Site-summed inner products weighted by volume_weight, deterministic
// pairwise-tree reduction. |beta|^2 on 2-forms counts each unordered pair
// once. Mismatched sizes or value tags are usage errors.
double inner(const LatticeGeometry& g, const ZeroForm& u, const ZeroForm& v);
double inner(const LatticeGeometry& g, const OneForm& u, const OneForm& v);
double inner(const LatticeGeometry& g, const TwoForm& u, const TwoForm& v);
double l2_norm(const LatticeGeometry& g, const ZeroForm& u);
double l2_norm(const LatticeGeometry& g, const OneForm& u);
double l2_norm(const LatticeGeometry& g, const TwoForm& u);

// All sites within periodic Euclidean distance R of the given centre.
// Requires 0 < R < half the shortest torus period (at half a period the ball
// wraps onto itself).
std::vector<std::size_t> ball_sites(const LatticeGeometry& g, std::size_t center, double R);

} // namespace swflow
