#pragma once

// Small dense complex matrices and vectors over the kernel layer, plus a
// cyclic Jacobi eigensolver for Hermitian matrices. Everything here is
// sized for Hilbert spaces of at most a few hundred dimensions.

#include <complex>
#include <cstddef>
#include <vector>

#include "jcryd/kernels.hpp"

namespace jcryd {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    cplx* row(std::size_t i) { return data_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }

    bool operator==(const CMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// Vector ops (kernel-dispatched).
CVec matvec(const CMatrix& a, const CVec& x);
void axpy(CVec& y, cplx alpha, const CVec& x);
void scale(CVec& x, cplx alpha);
cplx dot(const CVec& x, const CVec& y);  // <x|y>, conjugate-linear in x
double norm_sq(const CVec& x);
double norm(const CVec& x);

// Matrix ops.
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix dagger(const CMatrix& a);
double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius(const CMatrix& a);

struct EigResult {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column k is the eigenvector of values[k]
};

// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations. The lower triangle and the imaginary parts of the diagonal
// are ignored (mirrored from the upper triangle). Column phases are fixed
// so the largest-magnitude component of each eigenvector is real positive.
// Throws std::runtime_error if the residual contract
// ||H v - lambda v|| <= 1e-10 ||H||_F is not met.
EigResult hermitian_eig(const CMatrix& h);

}  // namespace jcryd
