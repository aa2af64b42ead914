#include "jcryd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jcryd {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cplx(1.0, 0.0);
    return m;
}

CVec matvec(const CMatrix& a, const CVec& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: size mismatch");
    CVec y(a.rows());
    kernels::active().matvec(y.data(), a.data(), x.data(), a.rows(), a.cols());
    return y;
}

void axpy(CVec& y, cplx alpha, const CVec& x) {
    if (y.size() != x.size()) throw std::invalid_argument("axpy: size mismatch");
    kernels::active().axpy(y.data(), alpha, x.data(), x.size());
}

void scale(CVec& x, cplx alpha) { kernels::active().scale(x.data(), alpha, x.size()); }

cplx dot(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    return kernels::active().cdot(x.data(), y.data(), x.size());
}

double norm_sq(const CVec& x) { return kernels::active().nrm2sq(x.data(), x.size()); }

double norm(const CVec& x) { return std::sqrt(norm_sq(x)); }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: size mismatch");
    CMatrix c(a.rows(), b.cols());
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const cplx scale_il = a(i, l);
            if (scale_il == cplx(0.0, 0.0)) continue;
            k.axpy(c.row(i), scale_il, b.row(l), b.cols());
        }
    }
    return c;
}

CMatrix dagger(const CMatrix& a) {
    CMatrix d(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d(j, i) = std::conj(a(i, j));
    return d;
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    const cplx* p = a.data();
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) m = std::max(m, std::abs(p[i]));
    return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double frobenius(const CMatrix& a) {
    return std::sqrt(kernels::active().nrm2sq(a.data(), a.rows() * a.cols()));
}

namespace {

// Residual check for every eigenpair against the original matrix.
void verify_residuals(const CMatrix& h, const EigResult& r) {
    const std::size_t n = h.rows();
    const double bound = 1e-10 * std::max(frobenius(h), 1e-300);
    CVec v(n), hv(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) v[i] = r.vectors(i, k);
        kernels::active().matvec(hv.data(), h.data(), v.data(), n, n);
        axpy(hv, cplx(-r.values[k], 0.0), v);
        if (norm(hv) > bound)
            throw std::runtime_error("hermitian_eig: residual contract violated");
    }
}

}  // namespace

EigResult hermitian_eig(const CMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eig: not square");
    const std::size_t n = h.rows();
    EigResult out;
    out.values.assign(n, 0.0);
    out.vectors = CMatrix::identity(n);
    if (n == 0) return out;

    CMatrix a = h;
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
    }
    CMatrix v = CMatrix::identity(n);

    const double fro = frobenius(a);
    if (fro > 0.0) {
        const double stop = 1e-14 * fro;
        const double skip = 1e-18 * fro;
        for (int sweep = 0; sweep < 64; ++sweep) {
            double off = 0.0;
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
            off = std::sqrt(2.0 * off);
            if (off <= stop) break;

            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const cplx beta = a(p, q);
                    const double m = std::abs(beta);
                    if (m <= skip) continue;

                    // Unitary G = diag(u,1) * [[c,-s],[s,c]] on rows/cols (p,q)
                    // zeroes a(p,q); the smaller-angle root keeps it stable.
                    const cplx u = beta / m;
                    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * m);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const cplx uc = u * c, us = u * s;

                    for (std::size_t i = 0; i < n; ++i) {  // A <- A G
                        const cplx aip = a(i, p), aiq = a(i, q);
                        a(i, p) = aip * uc + aiq * s;
                        a(i, q) = aiq * c - aip * us;
                    }
                    const cplx ucc = std::conj(uc), usc = std::conj(us);
                    for (std::size_t j = 0; j < n; ++j) {  // A <- G^dag A
                        const cplx apj = a(p, j), aqj = a(q, j);
                        a(p, j) = ucc * apj + s * aqj;
                        a(q, j) = c * aqj - usc * apj;
                    }
                    for (std::size_t i = 0; i < n; ++i) {  // V <- V G
                        const cplx vip = v(i, p), viq = v(i, q);
                        v(i, p) = vip * uc + viq * s;
                        v(i, q) = viq * c - vip * us;
                    }
                    a(p, q) = a(q, p) = cplx(0.0, 0.0);
                    a(p, p) = cplx(a(p, p).real(), 0.0);
                    a(q, q) = cplx(a(q, q).real(), 0.0);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = a(src, src).real();
        // Phase convention: largest-magnitude component real positive.
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::abs(v(i, src));
            if (mag > best) { best = mag; imax = i; }
        }
        cplx phase(1.0, 0.0);
        if (best > 0.0) phase = std::conj(v(imax, src)) / best;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, src) * phase;
    }

    verify_residuals(h, out);
    return out;
}

}  // namespace jcryd
