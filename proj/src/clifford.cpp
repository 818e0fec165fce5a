#include "swflow/clifford.hpp"

#include "swflow/lattice.hpp"

#include <stdexcept>

namespace swflow {

namespace {

GammaRep build_rep() {
    const cplx I(0.0, 1.0);
    GammaRep r;
    r.gamma[0] = {{{cplx(0), cplx(1)}, {cplx(1), cplx(0)}}};
    r.gamma[1] = {{{cplx(0), -I}, {I, cplx(0)}}};
    r.gamma[2] = {{{cplx(1), cplx(0)}, {cplx(0), cplx(-1)}}};
    r.gamma[3] = {{{I, cplx(0)}, {cplx(0), I}}};
    for (int p = 0; p < 6; ++p) {
        const int j = kPairFirst[p], k = kPairSecond[p];
        Mat2 m = mat_mul(mat_dagger(r.gamma[j]), r.gamma[k]);
        for (auto& row : m)
            for (auto& v : row) v = -v;
        r.biv[p] = m;
    }
    return r;
}

} // namespace

const GammaRep& gamma_rep() {
    static const GammaRep rep = build_rep();
    return rep;
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    Mat2 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return out;
}

Mat2 mat_dagger(const Mat2& a) {
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i][j] = std::conj(a[j][i]);
    return out;
}

SpinorValue apply(const Mat2& m, const SpinorValue& s) {
    SpinorValue out;
    out.chi = s.chi;
    out.c[0] = m[0][0] * s.c[0] + m[0][1] * s.c[1];
    out.c[1] = m[1][0] * s.c[0] + m[1][1] * s.c[1];
    return out;
}

SpinorValue clifford_mul(int j, const SpinorValue& phi) {
    if (j < 1 || j > 4) throw std::invalid_argument("clifford_mul: axis out of range");
    const auto& rep = gamma_rep();
    SpinorValue out;
    if (phi.chi == Chirality::plus) {
        out = apply(rep.gamma[j - 1], phi);
        out.chi = Chirality::minus;
    } else {
        Mat2 m = mat_dagger(rep.gamma[j - 1]);
        for (auto& row : m)
            for (auto& v : row) v = -v;
        out = apply(m, phi);
        out.chi = Chirality::plus;
    }
    return out;
}

SpinorValue bivector_mul(int j, int k, const SpinorValue& phi) {
    if (j == k) throw std::invalid_argument("bivector_mul: need j != k");
    if (j < 1 || j > 4 || k < 1 || k > 4) throw std::invalid_argument("bivector_mul: axis out of range");
    if (phi.chi != Chirality::plus) throw std::invalid_argument("bivector_mul: W+ value expected");
    const auto& rep = gamma_rep();
    const bool flip = j > k;
    const int p = flip ? pair_index(k - 1, j - 1) : pair_index(j - 1, k - 1);
    SpinorValue out = apply(rep.biv[p], phi);
    if (flip) {
        out.c[0] = -out.c[0];
        out.c[1] = -out.c[1];
    }
    return out;
}

TwoFormValue quadratic_map(const SpinorValue& phi) {
    if (phi.chi != Chirality::plus) throw std::invalid_argument("quadratic_map: W+ value expected");
    const auto& rep = gamma_rep();
    TwoFormValue q;
    for (int p = 0; p < 6; ++p) {
        const SpinorValue bp = apply(rep.biv[p], phi);
        // imag part of <B phi, phi>; the real part vanishes identically
        const cplx ip = std::conj(bp.c[0]) * phi.c[0] + std::conj(bp.c[1]) * phi.c[1];
        q[p] = 0.25 * ip.imag();
    }
    return q;
}

SpinorValue form_action(const TwoFormValue& mu, const SpinorValue& phi) {
    if (phi.chi != Chirality::plus) throw std::invalid_argument("form_action: W+ value expected");
    const auto& rep = gamma_rep();
    const cplx I(0.0, 1.0);
    SpinorValue out;
    out.chi = Chirality::plus;
    for (int p = 0; p < 6; ++p) {
        const SpinorValue bp = apply(rep.biv[p], phi);
        out.c[0] += 0.5 * I * mu[p] * bp.c[0];
        out.c[1] += 0.5 * I * mu[p] * bp.c[1];
    }
    return out;
}

double spinor_norm2(const SpinorValue& s) {
    return std::norm(s.c[0]) + std::norm(s.c[1]);
}

cplx spinor_inner(const SpinorValue& u, const SpinorValue& v) {
    return std::conj(u.c[0]) * v.c[0] + std::conj(u.c[1]) * v.c[1];
}

} // namespace swflow
