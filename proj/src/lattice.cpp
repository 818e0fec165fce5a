#include "swflow/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace swflow {

LatticeGeometry::LatticeGeometry(std::array<int, 4> dims, double h)
    : dims_(dims), h_(h) {
    for (int n : dims_)
        if (n < 4) throw std::invalid_argument("lattice: all dims must be >= 4");
    if (!(h > 0.0)) throw std::invalid_argument("lattice: spacing must be positive");
    vw_ = h * h * h * h;
    vol_ = std::size_t(dims_[0]) * dims_[1] * dims_[2] * dims_[3];
    up_.resize(4 * vol_);
    dn_.resize(4 * vol_);
    const int n1 = dims_[0], n2 = dims_[1], n3 = dims_[2], n4 = dims_[3];
    std::size_t idx = 0;
    for (int x4 = 0; x4 < n4; ++x4)
        for (int x3 = 0; x3 < n3; ++x3)
            for (int x2 = 0; x2 < n2; ++x2)
                for (int x1 = 0; x1 < n1; ++x1, ++idx) {
                    const int xs[4] = {x1, x2, x3, x4};
                    for (int j = 0; j < 4; ++j) {
                        int y[4] = {x1, x2, x3, x4};
                        y[j] = xs[j] + 1 == dims_[j] ? 0 : xs[j] + 1;
                        up_[4 * idx + j] = static_cast<std::uint32_t>(site(y[0], y[1], y[2], y[3]));
                        y[j] = xs[j] == 0 ? dims_[j] - 1 : xs[j] - 1;
                        dn_[4 * idx + j] = static_cast<std::uint32_t>(site(y[0], y[1], y[2], y[3]));
                    }
                }
    S_.assign(vol_, 0.0);
}

double LatticeGeometry::min_period() const {
    int n = *std::min_element(dims_.begin(), dims_.end());
    return h_ * n;
}

std::size_t LatticeGeometry::site(int x1, int x2, int x3, int x4) const {
    return static_cast<std::size_t>(x1) +
           static_cast<std::size_t>(dims_[0]) *
               (x2 + static_cast<std::size_t>(dims_[1]) * (x3 + static_cast<std::size_t>(dims_[2]) * x4));
}

std::array<int, 4> LatticeGeometry::coords(std::size_t idx) const {
    std::array<int, 4> x;
    x[0] = static_cast<int>(idx % dims_[0]);
    idx /= dims_[0];
    x[1] = static_cast<int>(idx % dims_[1]);
    idx /= dims_[1];
    x[2] = static_cast<int>(idx % dims_[2]);
    x[3] = static_cast<int>(idx / dims_[2]);
    return x;
}

void LatticeGeometry::set_scalar_curvature(std::vector<double> S) {
    if (S.size() != vol_) throw std::invalid_argument("scalar curvature: wrong size");
    S_ = std::move(S);
    S_min_ = *std::min_element(S_.begin(), S_.end());
    S_zero_ = std::all_of(S_.begin(), S_.end(), [](double s) { return s == 0.0; });
}

int pair_index(int j, int k) {
    static constexpr int tab[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
    if (j < 0 || k > 3 || j >= k) throw std::invalid_argument("pair_index: need 0 <= j < k <= 3");
    return tab[j][k];
}

ZeroForm make_zero_form(const LatticeGeometry& g, ValueTag tag) {
    return ZeroForm{std::vector<double>(g.volume(), 0.0), tag};
}
OneForm make_one_form(const LatticeGeometry& g, ValueTag tag) {
    return OneForm{std::vector<double>(4 * g.volume(), 0.0), tag};
}
TwoForm make_two_form(const LatticeGeometry& g, ValueTag tag) {
    return TwoForm{std::vector<double>(6 * g.volume(), 0.0), tag};
}

} // namespace swflow
