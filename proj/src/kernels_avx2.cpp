#include "rpsim/kernels.hpp"

// AVX2+FMA variants.  Two complex doubles per 256-bit vector; a*b uses the
// permute/fmaddsub idiom: with b' = swap(re,im of b),
//   fmaddsub(re(a), b, im(a)*b') = (ar*br - ai*bi, ar*bi + ai*br).
#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace rpsim::kernels {
namespace {

inline __m256d cmul2(__m256d a_re, __m256d a_im, __m256d b) {
    __m256d bs = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, bs));
}

void matmul_avx2(int n, const cplx* A, const cplx* B, cplx* C) {
    const double* bd = reinterpret_cast<const double*>(B);
    double* cd = reinterpret_cast<double*>(C);
    const int vec = n & ~1;  // complex elements handled two at a time
    for (int i = 0; i < n; ++i) {
        double* crow = cd + static_cast<std::size_t>(i) * n * 2;
        for (int j = 0; j < 2 * n; ++j) crow[j] = 0.0;
        for (int k = 0; k < n; ++k) {
            const cplx a = A[static_cast<std::size_t>(i) * n + k];
            const __m256d ar = _mm256_set1_pd(a.real());
            const __m256d ai = _mm256_set1_pd(a.imag());
            const double* brow = bd + static_cast<std::size_t>(k) * n * 2;
            int j = 0;
            for (; j < vec; j += 2) {
                __m256d b = _mm256_loadu_pd(brow + 2 * j);
                __m256d c = _mm256_loadu_pd(crow + 2 * j);
                c = _mm256_add_pd(c, cmul2(ar, ai, b));
                _mm256_storeu_pd(crow + 2 * j, c);
            }
            for (; j < n; ++j) {  // odd-dim remainder
                const cplx prod = a * B[static_cast<std::size_t>(k) * n + j];
                crow[2 * j] += prod.real();
                crow[2 * j + 1] += prod.imag();
            }
        }
    }
}

void cmul_avx2(std::size_t len, const cplx* x, const cplx* y, cplx* out) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    double* od = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d xre = _mm256_permute_pd(xv, 0x0);  // (xr, xr) per lane pair
        __m256d xim = _mm256_permute_pd(xv, 0xF);  // (xi, xi)
        _mm256_storeu_pd(od + 2 * i, cmul2(xre, xim, yv));
    }
    for (; i < len; ++i) out[i] = x[i] * y[i];
}

void axpy_avx2(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        yv = _mm256_add_pd(yv, cmul2(ar, ai, xv));
        _mm256_storeu_pd(yd + 2 * i, yv);
    }
    for (; i < len; ++i) y[i] += alpha * x[i];
}

cplx dotc_avx2(std::size_t len, const cplx* x, const cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    // conj(x)*y: re = xr*yr + xi*yi, im = xr*yi - xi*yr
    __m256d re_acc = _mm256_setzero_pd();
    __m256d im_acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d ys = _mm256_permute_pd(yv, 0x5);
        re_acc = _mm256_fmadd_pd(xv, yv, re_acc);   // (xr*yr, xi*yi) pairs
        im_acc = _mm256_fmadd_pd(xv, ys, im_acc);   // (xr*yi, xi*yr) pairs
    }
    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, re_acc);
    _mm256_store_pd(im4, im_acc);
    double re = re4[0] + re4[1] + re4[2] + re4[3];
    double im = (im4[0] - im4[1]) + (im4[2] - im4[3]);
    cplx acc(re, im);
    for (; i < len; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

}  // namespace

const Table* avx2_table() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static const Table t{matmul_avx2, cmul_avx2, axpy_avx2, dotc_avx2, "avx2"};
    return &t;
}

}  // namespace rpsim::kernels

#else  // non-AVX2 build target

namespace rpsim::kernels {
const Table* avx2_table() { return nullptr; }
}

#endif
