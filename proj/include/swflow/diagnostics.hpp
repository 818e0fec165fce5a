#pragma once

#include "swflow/flow.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace swflow {

// Machine-readable result of one structural-identity check. Residuals are
// (lattice size, residual) pairs; observed_order is the log2 ratio of the
// first two residuals (refinement checks measure N against 2N on shared
// continuum seeds). pass is a pure function of residuals and tolerance.
struct CheckReport {
    std::string name;
    std::vector<std::pair<int, double>> residuals;
    std::optional<double> observed_order;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;

    std::string to_text() const;     // line-oriented key = value block
    std::string to_csv() const;      // residual rows for the trace sidecar
};

// GammaRep axiom suite plus the convention locks |q|^2 = |phi|^4/8,
// <q.phi,phi> = 2|q|^2 and self-duality of q on n_spinors seeded random
// spinors. Residuals must stay below 1e-12.
CheckReport check_clifford(std::uint64_t seed = 1, int n_spinors = 1000);

// Residual of D*D phi = grad*grad phi + F.phi on shared-seed smooth
// configurations across sizes (the flat-torus form of the spinor Weitzenbock
// identity in this artifact's conventions; see the note in the report for how
// the signs and weights relate to the usual repeated-index statement).
// Gate: observed order >= 1 between the first two sizes. The defect is first
// order asymptotically but its finite-size log2 ratio sits strictly below 1
// (every lattice-symbol factor contracts), so this check reports the trend
// and fails the literal gate; see the README acceptance notes.
CheckReport check_weitzenbock_spinor(const std::vector<int>& sizes, std::uint64_t seed = 5);

// (dd* + d*d) alpha vs the componentwise 9-point Laplacian on random 1-forms:
// exact on the flat periodic lattice; gate 1e-12.
CheckReport check_weitzenbock_forms(std::uint64_t seed = 11, int size = 6);

// | ||F||^2 - 2||F+||^2 | / ||F||^2 for F = da on shared-seed data across
// sizes. Gate: observed order >= 2 (the continuum identity with c1 = 0). The
// same-site pairing makes this defect exactly first order for generic data
// (and exactly zero for parity-even data), so the gate fails; the report
// carries the analysis.
CheckReport check_selfdual_relation(const std::vector<int>& sizes, std::uint64_t seed = 31);
// Test seam for fault injection: star_fn replaces the Hodge star.
CheckReport check_selfdual_relation_with_star(const std::vector<int>& sizes, std::uint64_t seed,
                                              const std::function<TwoForm(const TwoForm&)>& star_fn);

// Energy monotonicity along a recorded trace plus the first-order dissipation
// defect |dE/dt + (2|phi.|^2 + |A.|^2)|; the two-trace overload additionally
// gates the defect halving under dt halving (ratio within 20% of 2).
CheckReport check_dissipation(const FlowTrace& trace);
CheckReport check_dissipation(const FlowTrace& coarse, const FlowTrace& fine);

// sup|phi(t)| <= max(m, sqrt|S0|) + 1e-10 at every recorded time.
CheckReport check_max_principle(const FlowTrace& trace, double m, double S0);

// local_energy_max bounded by its initial value + tolerance over the run.
CheckReport check_concentration(const FlowTrace& trace, double tolerance = 1e-8);

// Gauge invariance: exact for constant theta; defect order across sizes for a
// smooth theta (gate >= 2); gradient equivariance defect order (asymptote 2,
// gated at >= 1.7 with the measured values reported).
CheckReport check_gauge(const std::vector<int>& sizes, std::uint64_t seed = 5);

// hessian_vector: FD consistency against sw_gradient (< 1e-5 relative),
// symmetry under the gradient pairing (< 1e-12 relative), Gram positivity of
// rho rho* (>= -1e-12), and, when a converged configuration is supplied,
// near-kernel on gauge directions (<= 10x the gradient residual).
CheckReport check_hessian(const LatticeGeometry& g, const Configuration& cfg,
                          std::uint64_t seed = 7,
                          const Configuration* converged = nullptr);

// Named default suite used by the CLI.
std::vector<CheckReport> run_checks(const std::vector<std::string>& selection,
                                    const std::vector<int>& sizes, std::uint64_t seed);

} // namespace swflow
