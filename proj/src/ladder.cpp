#include "jcryd/ladder.hpp"

#include <cmath>
#include <stdexcept>

namespace jcryd {

namespace {

// Gather the n-block of the symmetric Hamiltonian: basis
// (|g,n>, |e_1,n-1>, ..., |e_K,n-1>), dimension 1+K.
CMatrix gather_block(const HMatrix& h, const ModelParams& p, int n) {
    const int K = p.n_channels();
    std::vector<int> idx;
    idx.reserve(1 + K);
    idx.push_back(index_of(SymIndex::ground(n), p));
    for (int k = 1; k <= K; ++k) idx.push_back(index_of(SymIndex::excited(k, n - 1), p));
    CMatrix block(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) block(i, j) = h.m(idx[i], idx[j]);
    return block;
}

void check_block_index(const LadderResult& r, int n) {
    if (n < 1 || n > r.n_atoms) throw std::out_of_range("ladder: n out of range");
}

}  // namespace

int LadderResult::plus_index(int n) const {
    check_block_index(*this, n);
    if (n_channels != 1) throw std::logic_error("plus/minus labels need K = 1");
    return 1;  // ascending order, two branches
}

int LadderResult::minus_index(int n) const {
    check_block_index(*this, n);
    if (n_channels != 1) throw std::logic_error("plus/minus labels need K = 1");
    return 0;
}

int LadderResult::ground_like_index(int n) const {
    return delta_r >= 0.0 ? plus_index(n) : minus_index(n);
}

int LadderResult::rydberg_like_index(int n) const {
    return delta_r >= 0.0 ? minus_index(n) : plus_index(n);
}

LadderResult ladder(const ModelParams& params) {
    params.validate();
    const int N = params.n_atoms;
    const int K = params.n_channels();
    const HMatrix h = build_symmetric(params);

    LadderResult out;
    out.n_atoms = N;
    out.n_channels = K;
    out.delta_r = params.delta_r;
    out.eps.resize(N);
    out.vectors.resize(N);
    out.splitting.resize(N);

    for (int n = 1; n <= N; ++n) {
        EigResult eig = hermitian_eig(gather_block(h, params, n));
        out.eps[n - 1] = eig.values;
        out.vectors[n - 1] = std::move(eig.vectors);
        out.splitting[n - 1] = eig.values.back() - eig.values.front();
    }

    if (K == 1 && params.omega_r > 0.0) {
        out.theta.resize(N);
        for (int n = 1; n <= N; ++n)
            out.theta[n - 1] = std::atan2(std::sqrt(static_cast<double>(n)) * params.omega_r,
                                          params.delta_r);
    }

    if (K == 1) {
        if (N >= 2) {
            const int gl1 = out.ground_like_index(1), gl2 = out.ground_like_index(2);
            const int rl1 = out.rydberg_like_index(1), rl2 = out.rydberg_like_index(2);
            out.kappa_plus = out.eps[1][gl2] - 2.0 * out.eps[0][gl1];
            out.kappa_minus = out.eps[1][rl2] - 2.0 * out.eps[0][rl1];
        } else {
            out.kappa_plus = kappa_plus_closed(params.omega_r, params.delta_r);
            out.kappa_minus = kappa_minus_closed(params.omega_r, params.delta_r);
        }
    } else if (N >= 2) {
        out.kappa_branch.resize(1 + K);
        for (int k = 0; k <= K; ++k)
            out.kappa_branch[k] = out.eps[1][k] - 2.0 * out.eps[0][k];
    }
    return out;
}

double mixing_angle(const ModelParams& params, int n) {
    params.validate();
    if (params.n_channels() != 1)
        throw std::invalid_argument("mixing_angle: requires K = 1");
    if (!(params.omega_r > 0.0))
        throw std::invalid_argument("mixing_angle: undefined for omega_r = 0");
    if (n < 1 || n > params.n_atoms)
        throw std::invalid_argument("mixing_angle: n out of range");
    return std::atan2(std::sqrt(static_cast<double>(n)) * params.omega_r, params.delta_r);
}

double eps_upper_closed(double omega_r, double delta_r, int n) {
    return (-delta_r + std::sqrt(n * omega_r * omega_r + delta_r * delta_r)) / 2.0;
}

double eps_lower_closed(double omega_r, double delta_r, int n) {
    return (-delta_r - std::sqrt(n * omega_r * omega_r + delta_r * delta_r)) / 2.0;
}

double eps_ground_like_closed(double omega_r, double delta_r, int n) {
    return delta_r >= 0.0 ? eps_upper_closed(omega_r, delta_r, n)
                          : eps_lower_closed(omega_r, delta_r, n);
}

double eps_rydberg_like_closed(double omega_r, double delta_r, int n) {
    return delta_r >= 0.0 ? eps_lower_closed(omega_r, delta_r, n)
                          : eps_upper_closed(omega_r, delta_r, n);
}

double kappa_plus_closed(double omega_r, double delta_r) {
    const double sgn = delta_r >= 0.0 ? 1.0 : -1.0;
    const double r2 = std::sqrt(2.0 * omega_r * omega_r + delta_r * delta_r);
    const double r1 = std::sqrt(omega_r * omega_r + delta_r * delta_r);
    return (delta_r + sgn * (r2 - 2.0 * r1)) / 2.0;
}

double kappa_minus_closed(double omega_r, double delta_r) {
    const double sgn = delta_r >= 0.0 ? 1.0 : -1.0;
    const double r2 = std::sqrt(2.0 * omega_r * omega_r + delta_r * delta_r);
    const double r1 = std::sqrt(omega_r * omega_r + delta_r * delta_r);
    return (delta_r - sgn * (r2 - 2.0 * r1)) / 2.0;
}

KappaLimits kappa_asymptotics(const ModelParams& params) {
    params.validate();
    const double ad = std::abs(params.delta_r);
    if (ad < 5.0 * params.omega_r)
        throw std::invalid_argument("kappa_asymptotics: requires |delta_r| >= 5 omega_r");
    const double w = params.omega_r;
    return {w * w * w * w / (8.0 * ad * ad * ad), ad};
}

SymState dressed_state(const ModelParams& params, int n, int branch) {
    const LadderResult lr = ladder(params);
    if (n < 1 || n > params.n_atoms) throw std::out_of_range("dressed_state: n out of range");
    const CMatrix& vecs = lr.vectors[n - 1];
    if (branch < 0 || static_cast<std::size_t>(branch) >= vecs.cols())
        throw std::out_of_range("dressed_state: branch out of range");

    SymState psi(params.sym_dim(), cplx(0.0, 0.0));
    psi[index_of(SymIndex::ground(n), params)] = vecs(0, branch);
    for (int k = 1; k <= params.n_channels(); ++k)
        psi[index_of(SymIndex::excited(k, n - 1), params)] = vecs(k, branch);
    return psi;
}

}  // namespace jcryd
