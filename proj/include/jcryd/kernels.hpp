#pragma once

// Runtime-dispatched complex linear-algebra kernels.
//
// Every kernel operates on contiguous arrays of std::complex<double>.
// The scalar implementations are the reference semantics; the AVX2
// variants must agree with them within floating-point reassociation
// error (covered by the equivalence tests). Selection happens once, at
// first use, based on CPU support; JCRYD_KERNELS=scalar in the
// environment forces the reference path.

#include <complex>
#include <cstddef>

namespace jcryd::kernels {

using cplx = std::complex<double>;

// y = A x with A dense row-major (rows x cols); y must not alias A or x.
using matvec_fn = void (*)(cplx* y, const cplx* a, const cplx* x,
                           std::size_t rows, std::size_t cols);
// y += alpha x
using axpy_fn = void (*)(cplx* y, cplx alpha, const cplx* x, std::size_t n);
// sum_i conj(x[i]) y[i]
using dot_fn = cplx (*)(const cplx* x, const cplx* y, std::size_t n);
// sum_i |x[i]|^2
using nrm2sq_fn = double (*)(const cplx* x, std::size_t n);
// x *= alpha
using scale_fn = void (*)(cplx* x, cplx alpha, std::size_t n);

struct KernelTable {
    matvec_fn matvec;
    axpy_fn axpy;
    dot_fn cdot;
    nrm2sq_fn nrm2sq;
    scale_fn scale;
    const char* name;
};

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
// Valid to call only when avx2_supported() is true.
const KernelTable& avx2_table();
#endif

bool avx2_supported();

// Table picked for this process (AVX2 if available, else scalar).
const KernelTable& active();

}  // namespace jcryd::kernels
