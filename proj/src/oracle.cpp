#include "jcryd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace jcryd {

namespace {

constexpr std::size_t kDimGuard = 100000;

int levels_per_atom(const ModelParams& p) { return 2 + p.n_channels(); }

// Digit of atom `atom` (0 = most significant) in the base-L expansion.
int level_of(std::size_t state, int atom, int n_atoms, int levels) {
    std::size_t s = state;
    for (int a = n_atoms - 1; a > atom; --a) s /= levels;
    return static_cast<int>(s % levels);
}

std::size_t with_level(std::size_t state, int atom, int n_atoms, int levels, int new_level) {
    std::size_t stride = 1;
    for (int a = n_atoms - 1; a > atom; --a) stride *= levels;
    const int old_level = level_of(state, atom, n_atoms, levels);
    return state + stride * static_cast<std::size_t>(new_level - old_level);
}

}  // namespace

int rydberg_count(std::size_t state, int n_atoms, int n_channels) {
    const int levels = 2 + n_channels;
    int count = 0;
    for (int a = 0; a < n_atoms; ++a)
        if (level_of(state, a, n_atoms, levels) >= 2) ++count;
    return count;
}

std::size_t product_dim(const ProductParams& params) {
    params.base.validate();
    const int levels = levels_per_atom(params.base);
    std::size_t dim = 1;
    for (int a = 0; a < params.base.n_atoms; ++a) {
        dim *= static_cast<std::size_t>(levels);
        if (dim > kDimGuard)
            throw std::length_error("product space exceeds the dimension guard");
    }
    return dim;
}

HMatrix build_product(const ProductParams& params) {
    const ModelParams& p = params.base;
    const std::size_t dim = product_dim(params);
    const int N = p.n_atoms;
    const int levels = levels_per_atom(p);
    if (!params.blockade.infinite &&
        (!std::isfinite(params.blockade.strength) || params.blockade.strength < 0.0))
        throw std::invalid_argument("build_product: blockade strength must be >= 0");

    CMatrix h(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        double diag = 0.0;
        int n_r = 0;
        for (int a = 0; a < N; ++a) {
            const int l = level_of(s, a, N, levels);
            if (l >= 2) {
                diag -= p.delta_r + p.channels[l - 2].detuning_offset;
                ++n_r;
            }
        }
        if (!params.blockade.infinite)
            diag += params.blockade.strength * (n_r * (n_r - 1)) / 2.0;
        h(s, s) = diag;

        for (int a = 0; a < N; ++a) {
            if (level_of(s, a, N, levels) != 1) continue;
            for (int k = 1; k <= p.n_channels(); ++k) {
                const std::size_t t = with_level(s, a, N, levels, 1 + k);
                const double c = p.channels[k - 1].rabi_scale * p.omega_r / 2.0;
                h(t, s) += c;
                h(s, t) += c;
            }
        }
    }

    if (params.blockade.infinite) {
        for (std::size_t s = 0; s < dim; ++s) {
            if (rydberg_count(s, N, p.n_channels()) < 2) continue;
            for (std::size_t t = 0; t < dim; ++t) {
                h(s, t) = cplx(0.0, 0.0);
                h(t, s) = cplx(0.0, 0.0);
            }
        }
    }
    return {std::move(h), BasisTag::Product, FrameTag::LaserFrame};
}

Symmetrizer symmetrize(const ProductParams& params) {
    const ModelParams& p = params.base;
    const std::size_t dim = product_dim(params);
    const int N = p.n_atoms;
    const int levels = levels_per_atom(p);
    const auto basis = enumerate_basis(p);

    CMatrix s_mat(dim, basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const SymIndex& idx = basis[col];
        std::vector<std::size_t> members;
        for (std::size_t s = 0; s < dim; ++s) {
            int ones = 0, rydberg_channel = 0, n_r = 0;
            for (int a = 0; a < N; ++a) {
                const int l = level_of(s, a, N, levels);
                if (l == 1) ++ones;
                if (l >= 2) {
                    ++n_r;
                    rydberg_channel = l - 1;
                }
            }
            if (idx.kind == SymIndex::Kind::Ground) {
                if (n_r == 0 && ones == idx.n_flips) members.push_back(s);
            } else {
                if (n_r == 1 && rydberg_channel == idx.channel && ones == idx.n_flips)
                    members.push_back(s);
            }
        }
        const double amp = 1.0 / std::sqrt(static_cast<double>(members.size()));
        for (std::size_t s : members) s_mat(s, col) = amp;
    }
    return {std::move(s_mat)};
}

ProjectionReport verify_projection(const ProductParams& params) {
    return compare_projection(params, build_symmetric(params.base));
}

ProjectionReport compare_projection(const ProductParams& params, const HMatrix& h_sym) {
    const HMatrix h_prod = build_product(params);
    const Symmetrizer sym = symmetrize(params);
    if (h_sym.dim() != sym.isometry.cols())
        throw std::invalid_argument("compare_projection: reference dimension mismatch");

    const CMatrix projected = matmul(matmul(dagger(sym.isometry), h_prod.m), sym.isometry);

    ProjectionReport report;
    report.max_matrix_deviation = max_abs_diff(projected, h_sym.m);

    const EigResult eig_sym = hermitian_eig(h_sym.m);
    const EigResult eig_prod = hermitian_eig(h_prod.m);

    const std::size_t sym_dim = h_sym.dim();
    const std::size_t prod_dim = h_prod.dim();
    for (std::size_t i = 0; i < sym_dim; ++i) {
        CVec u(sym_dim);
        for (std::size_t r = 0; r < sym_dim; ++r) u[r] = eig_sym.vectors(r, i);
        const CVec embedded = matvec(sym.isometry, u);

        std::size_t best = 0;
        double best_overlap = -1.0;
        CVec w(prod_dim);
        for (std::size_t j = 0; j < prod_dim; ++j) {
            for (std::size_t r = 0; r < prod_dim; ++r) w[r] = eig_prod.vectors(r, j);
            const double ov = std::abs(dot(w, embedded));
            if (ov > best_overlap) { best_overlap = ov; best = j; }
        }
        report.max_eigenvalue_deviation =
            std::max(report.max_eigenvalue_deviation,
                     std::abs(eig_prod.values[best] - eig_sym.values[i]));
    }
    return report;
}

double max_swap_commutator(const ProductParams& params) {
    const HMatrix h = build_product(params);
    const ModelParams& p = params.base;
    const std::size_t dim = h.dim();
    const int N = p.n_atoms;
    const int levels = levels_per_atom(p);
    const double scale = std::max(max_abs(h.m), 1e-300);

    double worst = 0.0;
    for (int a = 0; a < N; ++a) {
        for (int b = a + 1; b < N; ++b) {
            std::vector<std::size_t> perm(dim);
            for (std::size_t s = 0; s < dim; ++s) {
                const int la = level_of(s, a, N, levels);
                const int lb = level_of(s, b, N, levels);
                perm[s] = with_level(with_level(s, a, N, levels, lb), b, N, levels, la);
            }
            // (H P)(i,j) = H(i, perm(j)); (P H)(i,j) = H(perm(i), j)
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    worst = std::max(worst,
                                     std::abs(h.m(i, perm[j]) - h.m(perm[i], j)));
        }
    }
    return worst / scale;
}

}  // namespace jcryd
