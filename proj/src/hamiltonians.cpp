#include "jcryd/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

namespace jcryd {

namespace {

int g_idx(const ModelParams& p, int n) { return index_of(SymIndex::ground(n), p); }
int e_idx(const ModelParams& p, int k, int m) { return index_of(SymIndex::excited(k, m), p); }

}  // namespace

HMatrix build_symmetric(const ModelParams& params) {
    params.validate();
    CMatrix h(params.sym_dim(), params.sym_dim());
    const int N = params.n_atoms;
    for (int k = 1; k <= params.n_channels(); ++k) {
        const auto& ch = params.channels[k - 1];
        const double half_rabi = ch.rabi_scale * params.omega_r / 2.0;
        const double detuning = params.delta_r + ch.detuning_offset;
        for (int m = 0; m < N; ++m) h(e_idx(params, k, m), e_idx(params, k, m)) = -detuning;
        for (int n = 1; n <= N; ++n) {
            const double c = std::sqrt(static_cast<double>(n)) * half_rabi;
            h(e_idx(params, k, n - 1), g_idx(params, n)) = c;
            h(g_idx(params, n), e_idx(params, k, n - 1)) = c;
        }
    }
    return {std::move(h), BasisTag::Symmetric, FrameTag::LaserFrame};
}

HMatrix build_driven(const ModelParams& params, const DriveParams& drive) {
    if (!std::isfinite(drive.omega_uw) || !std::isfinite(drive.delta_uw))
        throw std::invalid_argument("DriveParams: values must be finite");
    if (drive.omega_uw < 0.0)
        throw std::invalid_argument("DriveParams: omega_uw must be >= 0");

    HMatrix h = build_symmetric(params);
    h.frame = FrameTag::DoublyRotating;
    const int N = params.n_atoms;
    const double half_uw = drive.omega_uw / 2.0;

    for (int n = 0; n <= N; ++n)
        h.m(g_idx(params, n), g_idx(params, n)) -= n * drive.delta_uw;
    for (int n = 0; n < N; ++n) {
        const double c = std::sqrt(static_cast<double>((n + 1) * (N - n))) * half_uw;
        h.m(g_idx(params, n + 1), g_idx(params, n)) += c;
        h.m(g_idx(params, n), g_idx(params, n + 1)) += c;
    }
    for (int k = 1; k <= params.n_channels(); ++k) {
        for (int m = 0; m < N; ++m)
            h.m(e_idx(params, k, m), e_idx(params, k, m)) -= (m + 1) * drive.delta_uw;
        for (int m = 0; m + 1 < N; ++m) {
            const double c = std::sqrt(static_cast<double>((m + 1) * (N - 1 - m))) * half_uw;
            h.m(e_idx(params, k, m + 1), e_idx(params, k, m)) += c;
            h.m(e_idx(params, k, m), e_idx(params, k, m + 1)) += c;
        }
    }
    return h;
}

HMatrix build_cavity_jc(const ModelParams& params, int truncation) {
    params.validate();
    if (params.n_channels() != 1)
        throw std::invalid_argument("build_cavity_jc: only a single channel is supported");
    if (truncation != params.n_atoms)
        throw std::invalid_argument("build_cavity_jc: truncation must equal n_atoms");

    const int N = params.n_atoms;
    const double omega_c = params.omega_hf;
    const double omega_eg = params.omega_hf - params.delta_r;
    const double g = params.omega_r / 2.0;

    // |n, qubit g> at index n (n = 0..N); |n, qubit e> at index N+1+n
    // (n = 0..N-1, so total excitations n+1 <= N).
    CMatrix h(2 * N + 1, 2 * N + 1);
    for (int n = 0; n <= N; ++n) h(n, n) = omega_c * n;
    for (int n = 0; n < N; ++n) h(N + 1 + n, N + 1 + n) = omega_c * n + omega_eg;
    for (int n = 0; n < N; ++n) {
        const double c = g * std::sqrt(static_cast<double>(n + 1));
        h(n + 1, N + 1 + n) = c;  // a^dag sigma-
        h(N + 1 + n, n + 1) = c;  // a sigma+
    }
    return {std::move(h), BasisTag::CavityJC, FrameTag::LaserFrame};
}

HMatrix restore_hyperfine_ladder(const HMatrix& h, const ModelParams& params) {
    if (h.basis != BasisTag::Symmetric)
        throw std::invalid_argument("restore_hyperfine_ladder: symmetric basis required");
    HMatrix out = h;
    const auto basis = enumerate_basis(params);
    for (std::size_t i = 0; i < basis.size(); ++i)
        out.m(i, i) += params.omega_hf * total_flips(basis[i]);
    return out;
}

bool is_hermitian(const HMatrix& h) {
    const CMatrix& m = h.m;
    if (m.rows() != m.cols()) return false;
    double max_entry = 0.0, max_asym = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            max_entry = std::max(max_entry, std::abs(m(i, j)));
            max_asym = std::max(max_asym, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return max_asym <= 1e-12 * max_entry;
}

}  // namespace jcryd
