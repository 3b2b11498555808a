#pragma once
#include <complex>
#include <cstddef>

// Low-level complex-double kernels with runtime-dispatched SIMD variants.
// All matrices are square, row-major, interleaved (re,im) storage — the
// layout std::complex<double> guarantees.  Dims here are tiny (2/4/16) so
// the point of the SIMD path is a verified alternative implementation, not
// raw speed; both paths are exercised by the equivalence tests.
namespace rpsim::kernels {

using cplx = std::complex<double>;

struct Table {
    // C = A * B, n x n. C must not alias A or B.
    void (*matmul)(int n, const cplx* A, const cplx* B, cplx* C);
    // out[i] = x[i] * y[i]
    void (*cmul)(std::size_t len, const cplx* x, const cplx* y, cplx* out);
    // y += alpha * x
    void (*axpy)(std::size_t len, cplx alpha, const cplx* x, cplx* y);
    // sum_i conj(x[i]) * y[i]
    cplx (*dotc)(std::size_t len, const cplx* x, const cplx* y);
    const char* name;
};

// Active table: chosen once per process.  Env RPSIM_KERNEL=scalar|avx2
// overrides CPU detection (unsupported request falls back to scalar).
const Table& active();

const Table& scalar_table();
// nullptr when the CPU (or build target) lacks AVX2+FMA.
const Table* avx2_table();

}  // namespace rpsim::kernels
