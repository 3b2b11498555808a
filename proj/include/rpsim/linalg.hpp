#pragma once
#include <complex>
#include <vector>

#include "rpsim/kernels.hpp"

namespace rpsim {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.  Small (dim 2/4/16 throughout),
// so everything is by-value and allocation-friendly.
struct CMat {
    int n = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim) {}

    cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static CMat zero(int dim) { return CMat(dim); }
    static CMat identity(int dim) {
        CMat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
};

CMat matmul(const CMat& A, const CMat& B);
CMat adjoint(const CMat& m);
CMat kron(const CMat& A, const CMat& B);
void add_scaled(CMat& y, cplx alpha, const CMat& x);  // y += alpha*x
cplx trace(const CMat& m);
cplx trace_of_product(const CMat& A, const CMat& B);  // tr(A*B) without forming it
double fro_norm(const CMat& m);
double max_abs(const CMat& m);
double max_abs_diff(const CMat& A, const CMat& B);
double hermiticity_defect(const CMat& m);  // max |m - m^dagger|

std::vector<cplx> matvec(const CMat& A, const std::vector<cplx>& x);

// Hermitian eigendecomposition, ascending eigenvalues: m = V diag(w) V^dagger.
struct Eigh {
    std::vector<double> w;
    CMat V;
};
Eigh eigh(const CMat& m);

std::vector<double> singular_values(const CMat& m);
std::vector<double> eigvalsh(const CMat& m);

}  // namespace rpsim
