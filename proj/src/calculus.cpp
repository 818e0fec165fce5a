#include "swflow/calculus.hpp"

#include "swflow/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace swflow {

namespace {

// star component sources and signs for pair order (12,13,14,23,24,34)
constexpr int kStarSrc[6] = {5, 4, 3, 2, 1, 0};
constexpr double kStarSgn[6] = {1.0, -1.0, 1.0, 1.0, -1.0, 1.0};

void check_tags(ValueTag a, ValueTag b) {
    if (a != b) throw std::invalid_argument("inner: mismatched value tags");
}

double weighted_pairwise(const LatticeGeometry& g, std::vector<double>& buf) {
    return g.volume_weight() * pairwise_sum(buf);
}

} // namespace

OneForm d0(const LatticeGeometry& g, const ZeroForm& f) {
    if (f.v.size() != g.volume()) throw std::invalid_argument("d0: wrong field size");
    OneForm out{std::vector<double>(4 * g.volume()), f.tag};
    const double ih = 1.0 / g.spacing();
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x)
            for (int j = 0; j < 4; ++j)
                out.c[4 * x + j] = (f.v[g.up(x, j)] - f.v[x]) * ih;
    });
    return out;
}

TwoForm d1(const LatticeGeometry& g, const OneForm& a) {
    if (a.c.size() != 4 * g.volume()) throw std::invalid_argument("d1: wrong field size");
    TwoForm out{std::vector<double>(6 * g.volume()), a.tag};
    const double ih = 1.0 / g.spacing();
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x)
            for (int p = 0; p < 6; ++p) {
                const int j = kPairFirst[p], k = kPairSecond[p];
                out.c[6 * x + p] = (a.c[4 * g.up(x, j) + k] - a.c[4 * x + k]) * ih -
                                   (a.c[4 * g.up(x, k) + j] - a.c[4 * x + j]) * ih;
            }
    });
    return out;
}

ZeroForm codifferential1(const LatticeGeometry& g, const OneForm& a) {
    if (a.c.size() != 4 * g.volume()) throw std::invalid_argument("codifferential1: wrong field size");
    ZeroForm out{std::vector<double>(g.volume()), a.tag};
    const double ih = 1.0 / g.spacing();
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            double s = 0.0;
            for (int j = 0; j < 4; ++j) s += a.c[4 * g.dn(x, j) + j] - a.c[4 * x + j];
            out.v[x] = s * ih;
        }
    });
    return out;
}

OneForm codifferential2(const LatticeGeometry& g, const TwoForm& b) {
    if (b.c.size() != 6 * g.volume()) throw std::invalid_argument("codifferential2: wrong field size");
    OneForm out{std::vector<double>(4 * g.volume()), b.tag};
    const double ih = 1.0 / g.spacing();
    parallel_for(g.volume(), [&](std::size_t be, std::size_t en) {
        for (std::size_t x = be; x < en; ++x) {
            double acc[4] = {0.0, 0.0, 0.0, 0.0};
            for (int p = 0; p < 6; ++p) {
                const int j = kPairFirst[p], k = kPairSecond[p];
                // (d*b)_j += D^b_k b_jk ; (d*b)_k -= D^b_j b_jk
                acc[j] += b.c[6 * x + p] - b.c[6 * g.dn(x, k) + p];
                acc[k] -= b.c[6 * x + p] - b.c[6 * g.dn(x, j) + p];
            }
            for (int j = 0; j < 4; ++j) out.c[4 * x + j] = acc[j] * ih;
        }
    });
    return out;
}

TwoForm hodge_star2(const TwoForm& b) {
    TwoForm out{std::vector<double>(b.c.size()), b.tag};
    parallel_for(b.c.size() / 6, [&](std::size_t be, std::size_t en) {
        for (std::size_t x = be; x < en; ++x)
            for (int p = 0; p < 6; ++p)
                out.c[6 * x + p] = kStarSgn[p] * b.c[6 * x + kStarSrc[p]];
    });
    return out;
}

TwoForm selfdual_project(const TwoForm& b) {
    TwoForm out{std::vector<double>(b.c.size()), b.tag};
    parallel_for(b.c.size() / 6, [&](std::size_t be, std::size_t en) {
        for (std::size_t x = be; x < en; ++x)
            for (int p = 0; p < 6; ++p)
                out.c[6 * x + p] = 0.5 * (b.c[6 * x + p] + kStarSgn[p] * b.c[6 * x + kStarSrc[p]]);
    });
    return out;
}

double inner(const LatticeGeometry& g, const ZeroForm& u, const ZeroForm& v) {
    if (u.v.size() != g.volume() || v.v.size() != g.volume())
        throw std::invalid_argument("inner: wrong field size");
    check_tags(u.tag, v.tag);
    std::vector<double> buf(g.volume());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) buf[x] = u.v[x] * v.v[x];
    });
    return weighted_pairwise(g, buf);
}

double inner(const LatticeGeometry& g, const OneForm& u, const OneForm& v) {
    if (u.c.size() != 4 * g.volume() || v.c.size() != 4 * g.volume())
        throw std::invalid_argument("inner: wrong field size");
    check_tags(u.tag, v.tag);
    std::vector<double> buf(g.volume());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            double s = 0.0;
            for (int j = 0; j < 4; ++j) s += u.c[4 * x + j] * v.c[4 * x + j];
            buf[x] = s;
        }
    });
    return weighted_pairwise(g, buf);
}

double inner(const LatticeGeometry& g, const TwoForm& u, const TwoForm& v) {
    if (u.c.size() != 6 * g.volume() || v.c.size() != 6 * g.volume())
        throw std::invalid_argument("inner: wrong field size");
    check_tags(u.tag, v.tag);
    std::vector<double> buf(g.volume());
    parallel_for(g.volume(), [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
            double s = 0.0;
            for (int p = 0; p < 6; ++p) s += u.c[6 * x + p] * v.c[6 * x + p];
            buf[x] = s;
        }
    });
    return weighted_pairwise(g, buf);
}

double l2_norm(const LatticeGeometry& g, const ZeroForm& u) { return std::sqrt(inner(g, u, u)); }
double l2_norm(const LatticeGeometry& g, const OneForm& u) { return std::sqrt(inner(g, u, u)); }
double l2_norm(const LatticeGeometry& g, const TwoForm& u) { return std::sqrt(inner(g, u, u)); }

std::vector<std::size_t> ball_sites(const LatticeGeometry& g, std::size_t center, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("ball_sites: R must be positive");
    if (!(R < 0.5 * g.min_period()))
        throw std::invalid_argument("ball_sites: R must be below half the shortest period");
    const auto c = g.coords(center);
    const double R2 = R * R, h = g.spacing();
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < g.volume(); ++x) {
        const auto p = g.coords(x);
        double d2 = 0.0;
        for (int j = 0; j < 4; ++j) {
            int d = std::abs(p[j] - c[j]);
            d = std::min(d, g.dims()[j] - d);
            d2 += double(d) * d * h * h;
        }
        if (d2 <= R2) out.push_back(x);
    }
    return out;
}

} // namespace swflow
