#include "doctest.h"

#include "swflow/calculus.hpp"
#include "swflow/parallel.hpp"
#include "swflow/fields.hpp"

#include <cmath>
#include <random>

using namespace swflow;

namespace {

LatticeGeometry unit_torus(int N) { return LatticeGeometry({N, N, N, N}, 1.0 / N); }

OneForm rand_one(const LatticeGeometry& g, std::uint64_t seed, ValueTag tag = ValueTag::real) {
    SynthSpec sp;
    sp.seed = seed;
    sp.band_limit = 2;
    return random_one_form(g, sp, tag);
}

// white-noise fills for the pure-algebra identities (no smoothness needed)
ZeroForm noise_zero(const LatticeGeometry& g, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ZeroForm f = make_zero_form(g);
    for (auto& v : f.v) v = gauss(rng);
    return f;
}
OneForm noise_one(const LatticeGeometry& g, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    OneForm f = make_one_form(g);
    for (auto& v : f.c) v = gauss(rng);
    return f;
}
TwoForm noise_two(const LatticeGeometry& g, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    TwoForm f = make_two_form(g);
    for (auto& v : f.c) v = gauss(rng);
    return f;
}

} // namespace

TEST_CASE("d0 of a constant vanishes") {
    const LatticeGeometry g = unit_torus(6);
    ZeroForm f = make_zero_form(g);
    for (auto& v : f.v) v = 3.25;
    const OneForm df = d0(g, f);
    for (double c : df.c) CHECK(c == 0.0);
}

TEST_CASE("d0 seam behaviour of the coordinate function") {
    // f(x) = x1*h is not periodic; interior edges see slope 1, the wrap edge
    // sees the periodic jump -(n-1).
    const int N = 6;
    const LatticeGeometry g = unit_torus(N);
    ZeroForm f = make_zero_form(g);
    for (std::size_t x = 0; x < g.volume(); ++x) f.v[x] = g.coords(x)[0] * g.spacing();
    const OneForm df = d0(g, f);
    for (std::size_t x = 0; x < g.volume(); ++x) {
        const auto c = g.coords(x);
        const double want1 = c[0] == N - 1 ? 1.0 - N : 1.0;
        CHECK(df.c[4 * x + 0] == doctest::Approx(want1).epsilon(1e-14));
        CHECK(df.c[4 * x + 1] == 0.0);
        CHECK(df.c[4 * x + 2] == 0.0);
        CHECK(df.c[4 * x + 3] == 0.0);
    }
}

TEST_CASE("d1(d0 f) = 0 to machine precision") {
    const LatticeGeometry g = unit_torus(6);
    SynthSpec sp;
    sp.seed = 3;
    sp.band_limit = 2;
    const ZeroForm f = random_zero_form(g, sp);
    const TwoForm dd = d1(g, d0(g, f));
    double worst = 0.0;
    for (double c : dd.c) worst = std::max(worst, std::abs(c));
    CHECK(worst < 1e-12);
}

TEST_CASE("d1 of a constant 1-form vanishes; single-mode value matches a brute-force stencil oracle") {
    const int N = 8;
    const LatticeGeometry g = unit_torus(N);
    OneForm a = make_one_form(g, ValueTag::imaginary);
    for (std::size_t x = 0; x < g.volume(); ++x)
        for (int j = 0; j < 4; ++j) a.c[4 * x + j] = 0.5 + 0.25 * j;
    const TwoForm F0 = d1(g, a);
    for (double c : F0.c) CHECK(std::abs(c) < 1e-13);

    // alpha_1(x) = sin(2 pi x2 / n2), other components zero; only the (1,2)
    // plaquette is hit. Oracle: evaluate the forward-difference stencil
    // directly from the defining formula at every site.
    OneForm alpha = make_one_form(g, ValueTag::imaginary);
    for (std::size_t x = 0; x < g.volume(); ++x)
        alpha.c[4 * x + 0] = std::sin(2.0 * M_PI * g.coords(x)[1] / N);
    const TwoForm F = d1(g, alpha);
    const int p12 = pair_index(0, 1);
    for (std::size_t x = 0; x < g.volume(); ++x) {
        const auto c = g.coords(x);
        const double a_here = std::sin(2.0 * M_PI * c[1] / N);
        const double a_up2 = std::sin(2.0 * M_PI * ((c[1] + 1) % N) / N);
        const double oracle = -(a_up2 - a_here) / g.spacing(); // -D_2 alpha_1
        CHECK(F.c[6 * x + p12] == doctest::Approx(oracle).epsilon(1e-13));
        for (int p = 0; p < 6; ++p)
            if (p != p12) CHECK(std::abs(F.c[6 * x + p]) < 1e-13);
    }
}

TEST_CASE("codifferentials are the exact adjoints of d0 and d1 (100 random pairs)") {
    const LatticeGeometry g = unit_torus(6);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const ZeroForm f = noise_zero(g, rng);
        const OneForm al = noise_one(g, rng);
        const TwoForm be = noise_two(g, rng);
        const double lhs1 = inner(g, d0(g, f), al);
        const double rhs1 = inner(g, f, codifferential1(g, al));
        CHECK(std::abs(lhs1 - rhs1) / (std::abs(lhs1) + 1e-30) < 1e-13);
        const double lhs2 = inner(g, d1(g, al), be);
        const double rhs2 = inner(g, al, codifferential2(g, be));
        CHECK(std::abs(lhs2 - rhs2) / (std::abs(lhs2) + 1e-30) < 1e-13);
    }
}

TEST_CASE("codifferential1(d0 f) equals the positive 9-point Laplacian stencil") {
    const LatticeGeometry g = unit_torus(6);
    SynthSpec sp;
    sp.seed = 23;
    sp.band_limit = 2;
    const ZeroForm f = random_zero_form(g, sp);
    const ZeroForm lap = codifferential1(g, d0(g, f));
    const double ih2 = 1.0 / (g.spacing() * g.spacing());
    for (std::size_t x = 0; x < g.volume(); ++x) {
        double oracle = 0.0;
        for (int j = 0; j < 4; ++j)
            oracle += (2.0 * f.v[x] - f.v[g.up(x, j)] - f.v[g.dn(x, j)]) * ih2;
        CHECK(lap.v[x] == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("hodge star is an involutive isometry and the projector splits norms") {
    const LatticeGeometry g = unit_torus(6);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const TwoForm b = noise_two(g, rng);

        const TwoForm ss = hodge_star2(hodge_star2(b));
        for (std::size_t i = 0; i < b.c.size(); ++i)
            if (ss.c[i] != b.c[i]) CHECK(ss.c[i] == b.c[i]);
        if (trial == 0)
            CHECK(inner(g, hodge_star2(b), hodge_star2(b)) == doctest::Approx(inner(g, b, b)));

        const TwoForm bp = selfdual_project(b);
        const TwoForm bpp = selfdual_project(bp);
        double worst = 0.0;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            worst = std::max(worst, std::abs(bpp.c[i] - bp.c[i]));
        CHECK(worst < 1e-14);

        // *b+ = b+ exactly
        const TwoForm sbp = hodge_star2(bp);
        double sd_worst = 0.0;
        for (std::size_t i = 0; i < bp.c.size(); ++i)
            sd_worst = std::max(sd_worst, std::abs(sbp.c[i] - bp.c[i]));
        CHECK(sd_worst < 1e-14);

        const TwoForm sb = hodge_star2(b);
        TwoForm bm{std::vector<double>(b.c.size()), b.tag};
        for (std::size_t i = 0; i < b.c.size(); ++i) bm.c[i] = 0.5 * (b.c[i] - sb.c[i]);
        CHECK(inner(g, b, b) ==
              doctest::Approx(inner(g, bp, bp) + inner(g, bm, bm)).epsilon(1e-13));
    }

    // single (1,2) component projects to half on (1,2) and (3,4)
    TwoForm e12 = make_two_form(g);
    for (std::size_t x = 0; x < g.volume(); ++x) e12.c[6 * x + pair_index(0, 1)] = 1.0;
    const TwoForm e12p = selfdual_project(e12);
    for (std::size_t x = 0; x < g.volume(); ++x) {
        CHECK(e12p.c[6 * x + pair_index(0, 1)] == 0.5);
        CHECK(e12p.c[6 * x + pair_index(2, 3)] == 0.5);
        CHECK(e12p.c[6 * x + pair_index(0, 2)] == 0.0);
    }
}

TEST_CASE("inner products: positivity, homogeneity, constant-field volume sum") {
    const LatticeGeometry g8({8, 8, 8, 8}, 1.0 / 8.0);
    ZeroForm one = make_zero_form(g8);
    for (auto& v : one.v) v = 1.0;
    CHECK(inner(g8, one, one) == doctest::Approx(1.0).epsilon(1e-14)); // 4096 * (1/8)^4

    const LatticeGeometry g = unit_torus(6);
    SynthSpec sp;
    sp.seed = 7;
    sp.band_limit = 2;
    const ZeroForm f = random_zero_form(g, sp);
    CHECK(inner(g, f, f) >= 0.0);
    ZeroForm cf = f;
    for (auto& v : cf.v) v *= -2.5;
    CHECK(l2_norm(g, cf) == doctest::Approx(2.5 * l2_norm(g, f)).epsilon(1e-13));

    ZeroForm zero = make_zero_form(g);
    CHECK(inner(g, zero, zero) == 0.0);
}

TEST_CASE("inner rejects mismatched tags") {
    const LatticeGeometry g = unit_torus(6);
    const OneForm u = make_one_form(g, ValueTag::real);
    const OneForm v = make_one_form(g, ValueTag::imaginary);
    CHECK_THROWS_AS((void)inner(g, u, v), std::invalid_argument);
}

TEST_CASE("ball_sites matches a brute-force enumeration and honours bounds") {
    const LatticeGeometry g = unit_torus(8);
    const std::size_t center = g.site(3, 4, 1, 6);
    const double R = 2.5 * g.spacing();
    const auto sites = ball_sites(g, center, R);

    // oracle: loop over all coordinate offsets in [-4, 4)
    std::size_t count = 0;
    const auto c = g.coords(center);
    for (std::size_t x = 0; x < g.volume(); ++x) {
        const auto p = g.coords(x);
        double d2 = 0.0;
        for (int j = 0; j < 4; ++j) {
            int d = p[j] - c[j];
            while (d > 4) d -= 8;
            while (d < -4) d += 8;
            d2 += double(d) * d;
        }
        if (d2 * g.spacing() * g.spacing() <= R * R + 1e-15) ++count;
    }
    CHECK(sites.size() == count);
    CHECK(count > 1);

    // R below one spacing: only the centre
    const auto tiny = ball_sites(g, center, 0.5 * g.spacing());
    REQUIRE(tiny.size() == 1);
    CHECK(tiny[0] == center);

    CHECK_THROWS_AS((void)ball_sites(g, center, 0.5 * g.min_period()), std::invalid_argument);
    CHECK_THROWS_AS((void)ball_sites(g, center, 0.0), std::invalid_argument);
}

TEST_CASE("lattice rejects undersized dims and nonpositive spacing") {
    CHECK_THROWS_AS(LatticeGeometry({3, 6, 6, 6}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(LatticeGeometry({6, 6, 6, 6}, 0.0), std::invalid_argument);
}

TEST_CASE("site/coords round trip and neighbour tables on an anisotropic grid") {
    const LatticeGeometry g({4, 6, 8, 5}, 0.2);
    CHECK(g.volume() == std::size_t(4) * 6 * 8 * 5);
    CHECK(g.min_period() == doctest::Approx(0.8));
    for (std::size_t x = 0; x < g.volume(); x += 7) {
        const auto c = g.coords(x);
        CHECK(g.site(c[0], c[1], c[2], c[3]) == x);
        for (int j = 0; j < 4; ++j) {
            CHECK(g.dn(g.up(x, j), j) == x);
            CHECK(g.up(g.dn(x, j), j) == x);
        }
    }
}

TEST_CASE("codifferential2 of the zero 2-form vanishes") {
    const LatticeGeometry g = unit_torus(6);
    const OneForm out = codifferential2(g, make_two_form(g));
    for (double v : out.c) CHECK(v == 0.0);
}

TEST_CASE("pairwise tree sum matches a compensated reference") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(12345);
    long double ref = 0.0;
    for (auto& x : v) {
        x = gauss(rng);
        ref += x;
    }
    CHECK(pairwise_sum(v) == doctest::Approx(double(ref)).epsilon(1e-13));
    CHECK(pairwise_sum(nullptr, 0) == 0.0);
}

TEST_CASE("form weitzenbock on 1-forms is exact (R_M = 0)") {
    const LatticeGeometry g = unit_torus(6);
    for (std::uint64_t seed : {1, 2, 3}) {
        const OneForm al = rand_one(g, seed);
        const OneForm lhs1 = d0(g, codifferential1(g, al));
        const OneForm lhs2 = codifferential2(g, d1(g, al));
        const double ih2 = 1.0 / (g.spacing() * g.spacing());
        double worst = 0.0;
        for (std::size_t x = 0; x < g.volume(); ++x)
            for (int j = 0; j < 4; ++j) {
                double lap = 0.0;
                for (int d = 0; d < 4; ++d)
                    lap += (2.0 * al.c[4 * x + j] - al.c[4 * g.up(x, d) + j] -
                            al.c[4 * g.dn(x, d) + j]) * ih2;
                worst = std::max(worst, std::abs(lhs1.c[4 * x + j] + lhs2.c[4 * x + j] - lap));
            }
        CHECK(worst < 1e-12);
    }
}
