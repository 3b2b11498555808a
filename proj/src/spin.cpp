#include "rpsim/spin.hpp"

#include <cmath>
#include <stdexcept>

namespace rpsim::spin {

CMat pauli(Axis axis) {
    CMat m(2);
    switch (axis) {
        case Axis::x:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case Axis::y:
            m(0, 1) = cplx(0.0, -1.0);
            m(1, 0) = cplx(0.0, 1.0);
            break;
        case Axis::z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

int sites_for_dim(int dim) {
    int s = 0, d = 1;
    while (d < dim) d <<= 1, ++s;
    if (d != dim || dim < 2) throw std::invalid_argument("state dim is not a power of two");
    return s;
}

CMat embed(const CMat& op2, int site, int nsites) {
    if (op2.n != 2) throw std::invalid_argument("embed: operator must be 2x2");
    if (site < 0 || site >= nsites) throw std::out_of_range("embed: site out of range");
    CMat acc = (site == 0) ? op2 : CMat::identity(2);
    for (int s = 1; s < nsites; ++s)
        acc = kron(acc, s == site ? op2 : CMat::identity(2));
    return acc;
}

std::vector<cplx> singlet_state() {
    const double inv = 1.0 / std::sqrt(2.0);
    return {cplx(0.0), cplx(inv), cplx(-inv), cplx(0.0)};
}

namespace {

CMat outer(const std::vector<cplx>& v) {
    CMat m(static_cast<int>(v.size()));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

CMat expand_electron_op(const CMat& op4, int nsites) {
    if (nsites == 2) return op4;
    return kron(op4, CMat::identity(1 << (nsites - 2)));
}

}  // namespace

Projectors singlet_triplet_projectors(int nsites) {
    if (nsites < 2) throw std::invalid_argument("projectors: need electron pair");
    const double inv = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> S{0.0, inv, -inv, 0.0};
    const std::vector<cplx> Tp{1.0, 0.0, 0.0, 0.0};
    const std::vector<cplx> T0{0.0, inv, inv, 0.0};
    const std::vector<cplx> Tm{0.0, 0.0, 0.0, 1.0};
    CMat qs4 = outer(S);
    CMat qt4 = outer(Tp);
    add_scaled(qt4, 1.0, outer(T0));
    add_scaled(qt4, 1.0, outer(Tm));
    return {expand_electron_op(qs4, nsites), expand_electron_op(qt4, nsites)};
}

CMat rank1_triplet_operator(int nsites) {
    const double inv = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> T{1.0, inv, inv, 1.0};  // |T+>+|T0>+|T->
    return expand_electron_op(outer(T), nsites);
}

CMat partial_trace(const CMat& rho, int nsites, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    if (rho.n != (1 << nsites)) throw std::invalid_argument("partial_trace: dim/layout mismatch");
    std::vector<bool> kept(nsites, false);
    for (int s : keep) {
        if (s < 0 || s >= nsites) throw std::out_of_range("partial_trace: bad site");
        kept[s] = true;
    }
    std::vector<int> keep_sites, trace_sites;
    for (int s = 0; s < nsites; ++s) (kept[s] ? keep_sites : trace_sites).push_back(s);

    const int nk = static_cast<int>(keep_sites.size());
    const int nt = static_cast<int>(trace_sites.size());
    const int dk = 1 << nk, dt = 1 << nt;
    // site s occupies bit (nsites-1-s) of the row index (site 0 most significant)
    auto compose = [&](int kbits, int tbits) {
        int idx = 0;
        for (int m = 0; m < nk; ++m) {
            int bit = (kbits >> (nk - 1 - m)) & 1;
            idx |= bit << (nsites - 1 - keep_sites[m]);
        }
        for (int m = 0; m < nt; ++m) {
            int bit = (tbits >> (nt - 1 - m)) & 1;
            idx |= bit << (nsites - 1 - trace_sites[m]);
        }
        return idx;
    };

    CMat out(dk);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j) {
            cplx acc(0.0, 0.0);
            for (int t = 0; t < dt; ++t) acc += rho(compose(i, t), compose(j, t));
            out(i, j) = acc;
        }
    return out;
}

CMat partial_transpose(const CMat& rho4, Subsystem which) {
    if (rho4.n != 4) throw std::invalid_argument("partial_transpose: need 4x4 two-qubit state");
    CMat out(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    // element ((i,j),(k,l)) of rho, first-qubit index i,k
                    if (which == Subsystem::first)
                        out(k * 2 + j, i * 2 + l) = rho4(i * 2 + j, k * 2 + l);
                    else
                        out(i * 2 + l, k * 2 + j) = rho4(i * 2 + j, k * 2 + l);
                }
    return out;
}

double trace_norm(const CMat& m) {
    double s = 0.0;
    for (double sv : singular_values(m)) s += sv;
    return s;
}

}  // namespace rpsim::spin
