#include "jcryd/kernels.hpp"

// Reference kernels. Plain loops over explicit real/imaginary parts so the
// arithmetic order is fixed and independent of std::complex operator
// implementations.

namespace jcryd::kernels {

namespace {

void matvec_scalar(cplx* y, const cplx* a, const cplx* x,
                   std::size_t rows, std::size_t cols) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t r = 0; r < rows; ++r) {
        double acc_re = 0.0, acc_im = 0.0;
        const double* row = ad + 2 * r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            const double ar = row[2 * c], ai = row[2 * c + 1];
            const double xr = xd[2 * c], xi = xd[2 * c + 1];
            acc_re += ar * xr - ai * xi;
            acc_im += ar * xi + ai * xr;
        }
        y[r] = cplx(acc_re, acc_im);
    }
}

void axpy_scalar(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    const double lr = alpha.real(), li = alpha.imag();
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        yd[2 * i] += lr * xr - li * xi;
        yd[2 * i + 1] += lr * xi + li * xr;
    }
}

cplx cdot_scalar(const cplx* x, const cplx* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        const double yr = yd[2 * i], yi = yd[2 * i + 1];
        acc_re += xr * yr + xi * yi;
        acc_im += xr * yi - xi * yr;
    }
    return cplx(acc_re, acc_im);
}

double nrm2sq_scalar(const cplx* x, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) acc += xd[i] * xd[i];
    return acc;
}

void scale_scalar(cplx* x, cplx alpha, std::size_t n) {
    const double lr = alpha.real(), li = alpha.imag();
    double* xd = reinterpret_cast<double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        xd[2 * i] = lr * xr - li * xi;
        xd[2 * i + 1] = lr * xi + li * xr;
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{matvec_scalar, axpy_scalar, cdot_scalar,
                                   nrm2sq_scalar, scale_scalar, "scalar"};
    return table;
}

}  // namespace jcryd::kernels
