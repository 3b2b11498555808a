#include "rpsim/kernels.hpp"

namespace rpsim::kernels {
namespace {

void matmul_scalar(int n, const cplx* A, const cplx* B, cplx* C) {
    for (int i = 0; i < n; ++i) {
        cplx* crow = C + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) crow[j] = cplx(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            const cplx a = A[static_cast<std::size_t>(i) * n + k];
            const cplx* brow = B + static_cast<std::size_t>(k) * n;
            for (int j = 0; j < n; ++j) crow[j] += a * brow[j];
        }
    }
}

void cmul_scalar(std::size_t len, const cplx* x, const cplx* y, cplx* out) {
    for (std::size_t i = 0; i < len; ++i) out[i] = x[i] * y[i];
}

void axpy_scalar(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

cplx dotc_scalar(std::size_t len, const cplx* x, const cplx* y) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < len; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

}  // namespace

const Table& scalar_table() {
    static const Table t{matmul_scalar, cmul_scalar, axpy_scalar, dotc_scalar, "scalar"};
    return t;
}

}  // namespace rpsim::kernels
