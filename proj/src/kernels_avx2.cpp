#include "jcryd/kernels.hpp"

// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma;
// nothing here may be called unless avx2_supported() returned true.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace jcryd::kernels {

namespace {

// One __m256d holds two interleaved complex doubles [re0, im0, re1, im1].
// Packed complex product:
//   even lanes: ar*br - ai*bi, odd lanes: ai*br + ar*bi
inline __m256d cmul(__m256d a, __m256d b) {
    __m256d b_re = _mm256_movedup_pd(b);
    __m256d b_im = _mm256_permute_pd(b, 0xF);
    __m256d a_sw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline cplx reduce_pair(__m256d acc) {
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return cplx(out[0], out[1]);
}

void matvec_avx2(cplx* y, const cplx* a, const cplx* x,
                 std::size_t rows, std::size_t cols) {
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = reinterpret_cast<const double*>(a + r * cols);
        __m256d acc = _mm256_setzero_pd();
        std::size_t c = 0;
        for (; c + 2 <= cols; c += 2) {
            __m256d av = _mm256_loadu_pd(row + 2 * c);
            __m256d xv = _mm256_loadu_pd(xd + 2 * c);
            acc = _mm256_add_pd(acc, cmul(av, xv));
        }
        cplx sum = reduce_pair(acc);
        if (c < cols) {
            const double ar = row[2 * c], ai = row[2 * c + 1];
            const double xr = xd[2 * c], xi = xd[2 * c + 1];
            sum += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
        }
        y[r] = sum;
    }
}

void axpy_avx2(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    alignas(16) double al[2] = {alpha.real(), alpha.imag()};
    __m256d av = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(al));
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul(xv, av)));
    }
    if (i < n) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        yd[2 * i] += alpha.real() * xr - alpha.imag() * xi;
        yd[2 * i + 1] += alpha.real() * xi + alpha.imag() * xr;
    }
}

cplx cdot_avx2(const cplx* x, const cplx* y, std::size_t n) {
    // conj(x): flip the sign of the imaginary lanes, then multiply packed.
    const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_xor_pd(_mm256_loadu_pd(xd + 2 * i), conj_mask);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc = _mm256_add_pd(acc, cmul(xv, yv));
    }
    cplx sum = reduce_pair(acc);
    if (i < n) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        const double yr = yd[2 * i], yi = yd[2 * i + 1];
        sum += cplx(xr * yr + xi * yi, xr * yi - xi * yr);
    }
    return sum;
}

double nrm2sq_avx2(const cplx* x, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const std::size_t m = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256d v = _mm256_loadu_pd(xd + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    double sum = out[0] + out[1];
    for (; i < m; ++i) sum += xd[i] * xd[i];
    return sum;
}

void scale_avx2(cplx* x, cplx alpha, std::size_t n) {
    alignas(16) double al[2] = {alpha.real(), alpha.imag()};
    __m256d av = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(al));
    double* xd = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        _mm256_storeu_pd(xd + 2 * i, cmul(xv, av));
    }
    if (i < n) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        xd[2 * i] = alpha.real() * xr - alpha.imag() * xi;
        xd[2 * i + 1] = alpha.real() * xi + alpha.imag() * xr;
    }
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{matvec_avx2, axpy_avx2, cdot_avx2,
                                   nrm2sq_avx2, scale_avx2, "avx2"};
    return table;
}

}  // namespace jcryd::kernels

#endif  // x86_64
