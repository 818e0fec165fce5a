#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace swflow {

// Periodic 4-torus grid. Sites are indexed lexicographically with x1 fastest
// and x4 slowest; all neighbour lookups go through precomputed index tables
// (wrap by index arithmetic, no ghost layers).
//
// Scalar curvature S is a per-site field, identically zero by default. On the
// flat torus the geometric value is zero; a nonzero S is a synthetic field that
// exercises the S-dependent terms of the functional at equation level only.
// The geometric constants omega, R_M and c1(L) are all zero here.
class LatticeGeometry {
public:
    LatticeGeometry(std::array<int, 4> dims, double h);

    const std::array<int, 4>& dims() const { return dims_; }
    double spacing() const { return h_; }
    double volume_weight() const { return vw_; }   // h^4
    std::size_t volume() const { return vol_; }    // number of sites
    double period(int j) const { return h_ * dims_[j]; }
    double min_period() const;

    std::size_t site(int x1, int x2, int x3, int x4) const;
    std::array<int, 4> coords(std::size_t idx) const;

    // neighbour in direction j (0..3), +1 / -1 step
    std::size_t up(std::size_t idx, int j) const { return up_[4 * idx + j]; }
    std::size_t dn(std::size_t idx, int j) const { return dn_[4 * idx + j]; }

    const std::vector<double>& scalar_curvature() const { return S_; }
    double scalar_min() const { return S_min_; } // S0
    bool scalar_is_zero() const { return S_zero_; }
    void set_scalar_curvature(std::vector<double> S);

private:
    std::array<int, 4> dims_;
    double h_, vw_;
    std::size_t vol_;
    std::vector<std::uint32_t> up_, dn_;
    std::vector<double> S_;
    double S_min_ = 0.0;
    bool S_zero_ = true;
};

enum class ValueTag { real, imaginary };

// Discrete forms; one record per base site, components collocated at the site.
// A tagged imaginary form stores the coefficient w of the value i*w, so purely
// imaginary data (connections, curvature, perturbations) is imaginary by
// construction.
struct ZeroForm {
    std::vector<double> v;         // [site]
    ValueTag tag = ValueTag::real;
};

struct OneForm {
    std::vector<double> c;         // [site*4 + j], component j on edge (x, x+j)
    ValueTag tag = ValueTag::real;
};

// Component order for 2-forms, pairs (j,k) with j<k:
//   0:(1,2) 1:(1,3) 2:(1,4) 3:(2,3) 4:(2,4) 5:(3,4)   (axes named 1..4)
inline constexpr int kPairFirst[6]  = {0, 0, 0, 1, 1, 2};
inline constexpr int kPairSecond[6] = {1, 2, 3, 2, 3, 3};
int pair_index(int j, int k); // j<k, 0-based axes

struct TwoForm {
    std::vector<double> c;         // [site*6 + p], plaquette (j,k) at the site
    ValueTag tag = ValueTag::real;
};

ZeroForm make_zero_form(const LatticeGeometry& g, ValueTag tag = ValueTag::real);
OneForm make_one_form(const LatticeGeometry& g, ValueTag tag = ValueTag::real);
TwoForm make_two_form(const LatticeGeometry& g, ValueTag tag = ValueTag::real);

} // namespace swflow
