#include "doctest.h"

#include "swflow/clifford.hpp"

#include <cmath>
#include <random>

using namespace swflow;

namespace {

SpinorValue rand_spinor(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpinorValue s;
    s.c[0] = cplx(gauss(rng), gauss(rng));
    s.c[1] = cplx(gauss(rng), gauss(rng));
    return s;
}

} // namespace

TEST_CASE("e_j e_j = -1 on basis spinors and <e_j u, e_j v> = <u, v>") {
    std::mt19937_64 rng(1);
    for (int j = 1; j <= 4; ++j) {
        for (int b = 0; b < 2; ++b) {
            SpinorValue e;
            e.c[b] = 1.0;
            const SpinorValue out = clifford_mul(j, clifford_mul(j, e));
            CHECK(std::abs(out.c[0] + e.c[0]) < 1e-15);
            CHECK(std::abs(out.c[1] + e.c[1]) < 1e-15);
            CHECK(out.chi == Chirality::plus);
        }
        const SpinorValue u = rand_spinor(rng), v = rand_spinor(rng);
        const cplx lhs = spinor_inner(clifford_mul(j, u), clifford_mul(j, v));
        CHECK(std::abs(lhs - spinor_inner(u, v)) < 1e-14);
    }
}

TEST_CASE("bivector antisymmetry, square, and disjoint-pair commutation") {
    std::mt19937_64 rng(2);
    const SpinorValue phi = rand_spinor(rng);
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k) {
            if (j == k) continue;
            const SpinorValue a = bivector_mul(j, k, phi);
            const SpinorValue b = bivector_mul(k, j, phi);
            CHECK(std::abs(a.c[0] + b.c[0]) < 1e-15);
            CHECK(std::abs(a.c[1] + b.c[1]) < 1e-15);
            const SpinorValue sq = bivector_mul(j, k, a);
            CHECK(std::abs(sq.c[0] + phi.c[0]) < 1e-14);
            CHECK(std::abs(sq.c[1] + phi.c[1]) < 1e-14);
        }

    // disjoint pairs commute; oracle: direct 2x2 matrix products
    const auto& rep = gamma_rep();
    const Mat2 b12 = rep.biv[0], b34 = rep.biv[5];
    const Mat2 lhs = mat_mul(b12, b34), rhs = mat_mul(b34, b12);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(std::abs(lhs[r][c] - rhs[r][c]) < 1e-15);
    const SpinorValue x = bivector_mul(1, 2, bivector_mul(3, 4, phi));
    const SpinorValue y = bivector_mul(3, 4, bivector_mul(1, 2, phi));
    CHECK(std::abs(x.c[0] - y.c[0]) < 1e-15);
    CHECK(std::abs(x.c[1] - y.c[1]) < 1e-15);
}

TEST_CASE("quadratic map: zero, phase invariance, self-duality, norm lock") {
    SpinorValue zero;
    const TwoFormValue q0 = quadratic_map(zero);
    for (double v : q0) CHECK(v == 0.0);

    std::mt19937_64 rng(3);
    double worst_norm = 0.0, worst_pair = 0.0, worst_sd = 0.0, worst_phase = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const SpinorValue phi = rand_spinor(rng);
        const TwoFormValue q = quadratic_map(phi);
        const double n2 = spinor_norm2(phi);
        double q2 = 0.0;
        for (double v : q) q2 += v * v;
        worst_norm = std::max(worst_norm, std::abs(q2 - n2 * n2 / 8.0));
        const cplx pr = spinor_inner(form_action(q, phi), phi);
        worst_pair = std::max(worst_pair, std::abs(pr - cplx(2.0 * q2)));
        worst_sd = std::max(worst_sd, std::abs(q[0] - q[5]));
        worst_sd = std::max(worst_sd, std::abs(q[1] + q[4]));
        worst_sd = std::max(worst_sd, std::abs(q[2] - q[3]));

        SpinorValue rot = phi;
        const cplx ph = std::exp(cplx(0.0, 1.234));
        rot.c[0] *= ph;
        rot.c[1] *= ph;
        const TwoFormValue qr = quadratic_map(rot);
        for (int p = 0; p < 6; ++p) worst_phase = std::max(worst_phase, std::abs(qr[p] - q[p]));
    }
    CHECK(worst_norm < 1e-13);
    CHECK(worst_pair < 1e-13);
    CHECK(worst_sd < 1e-14);
    CHECK(worst_phase < 1e-13);
}

TEST_CASE("form action: zero, additivity, Hermitian pairing") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const SpinorValue phi = rand_spinor(rng);

    TwoFormValue zero{};
    const SpinorValue z = form_action(zero, phi);
    CHECK(std::abs(z.c[0]) + std::abs(z.c[1]) == 0.0);

    TwoFormValue mu, nu;
    for (int p = 0; p < 6; ++p) {
        mu[p] = gauss(rng);
        nu[p] = gauss(rng);
    }
    TwoFormValue sum;
    for (int p = 0; p < 6; ++p) sum[p] = mu[p] + nu[p];
    const SpinorValue lhs = form_action(sum, phi);
    const SpinorValue a = form_action(mu, phi), b = form_action(nu, phi);
    CHECK(std::abs(lhs.c[0] - a.c[0] - b.c[0]) < 1e-14);
    CHECK(std::abs(lhs.c[1] - a.c[1] - b.c[1]) < 1e-14);

    // <mu.phi, phi> is real for imaginary-valued mu (Hermitian action)
    CHECK(std::abs(spinor_inner(a, phi).imag()) < 1e-14);
}

TEST_CASE("usage errors: axis range and equal bivector axes") {
    SpinorValue phi;
    phi.c[0] = 1.0;
    CHECK_THROWS_AS((void)clifford_mul(0, phi), std::invalid_argument);
    CHECK_THROWS_AS((void)clifford_mul(5, phi), std::invalid_argument);
    CHECK_THROWS_AS((void)bivector_mul(2, 2, phi), std::invalid_argument);
    SpinorValue minus;
    minus.chi = Chirality::minus;
    CHECK_THROWS_AS((void)bivector_mul(1, 2, minus), std::invalid_argument);
    CHECK_THROWS_AS((void)quadratic_map(minus), std::invalid_argument);
}

TEST_CASE("documented matrix entries satisfy the axioms checked exhaustively") {
    // oracle: rebuild the 4x4 representation from the published 2x2 entries
    // and grind through every anticommutator by hand
    const auto& rep = gamma_rep();
    const cplx I(0.0, 1.0);
    CHECK(rep.gamma[0][0][1] == cplx(1.0));
    CHECK(rep.gamma[1][0][1] == -I);
    CHECK(rep.gamma[2][0][0] == cplx(1.0));
    CHECK(rep.gamma[3][0][0] == I);

    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            // top-left block of the anticommutator: gamma_j^dag gamma_k + gamma_k^dag gamma_j
            Mat2 s = mat_mul(mat_dagger(rep.gamma[j]), rep.gamma[k]);
            const Mat2 t = mat_mul(mat_dagger(rep.gamma[k]), rep.gamma[j]);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    const cplx want = (j == k && r == c) ? cplx(2.0) : cplx(0.0);
                    CHECK(std::abs(s[r][c] + t[r][c] - want) < 1e-15);
                }
        }
}
