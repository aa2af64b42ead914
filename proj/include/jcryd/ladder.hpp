#pragma once

// Dressed-state ladder of the undriven symmetric Hamiltonian: per-flip
// eigenvalues, branch labels, mixing angles, normal-mode splittings, and
// the nonlinear shifts kappa_plus / kappa_minus.
//
// Branch bookkeeping for K = 1 carries two labelings:
//   * plus/minus: upper/lower eigenvalue of the n-block. This labeling is
//     continuous in delta_r and coincides with labeling by eigenvalue sign
//     whenever omega_r > 0.
//   * ground_like/rydberg_like: the physical branch identity. The
//     ground-like branch is plus for delta_r >= 0 and minus for
//     delta_r < 0, so its eigenvalue carries the sign of delta_r.

#include <vector>

#include "jcryd/hamiltonians.hpp"

namespace jcryd {

struct LadderResult {
    int n_atoms = 0;
    int n_channels = 0;
    double delta_r = 0.0;

    // Indexed by n-1 for n = 1..N; eigenvalues ascending within a block.
    std::vector<std::vector<double>> eps;
    std::vector<CMatrix> vectors;       // block eigenvectors, columns match eps
    std::vector<double> splitting;      // K=1: |eps_plus - eps_minus|; else max-min
    std::vector<double> theta;          // mixing angles, K=1 with omega_r > 0 only

    // K = 1: nonlinear shifts of the ground-like / rydberg-like branches
    // (from eigenvalues when N >= 2, from the closed form for N = 1).
    double kappa_plus = 0.0;
    double kappa_minus = 0.0;
    // K >= 2, N >= 2: eps2[k] - 2*eps1[k] per ascending branch index.
    std::vector<double> kappa_branch;

    int plus_index(int n) const;          // K=1: upper eigenvalue
    int minus_index(int n) const;         // K=1: lower eigenvalue
    int ground_like_index(int n) const;   // K=1: plus if delta_r >= 0 else minus
    int rydberg_like_index(int n) const;  // K=1: the other branch
};

LadderResult ladder(const ModelParams& params);

// Mixing angle theta_n = atan2(sqrt(n) omega_r, delta_r), in (0, pi) and
// continuous through delta_r = 0. Requires K = 1, omega_r > 0, 1 <= n <= N;
// the amplitudes (cos theta/2, sin theta/2) reproduce the upper-branch
// eigenvector of the n-block.
double mixing_angle(const ModelParams& params, int n);

// Closed-form K=1 block eigenvalues, upper/lower continuous labeling.
double eps_upper_closed(double omega_r, double delta_r, int n);
double eps_lower_closed(double omega_r, double delta_r, int n);
// Ground-like branch eigenvalue (upper for delta_r >= 0, lower otherwise).
double eps_ground_like_closed(double omega_r, double delta_r, int n);
double eps_rydberg_like_closed(double omega_r, double delta_r, int n);
// Closed-form nonlinear shifts.
double kappa_plus_closed(double omega_r, double delta_r);
double kappa_minus_closed(double omega_r, double delta_r);

struct KappaLimits {
    double kappa_plus_limit;   // omega_r^4 / (8 |delta_r|^3)
    double kappa_minus_limit;  // |delta_r|
};

// Leading-order magnitudes for |delta_r| >> omega_r; valid input requires
// |delta_r| >= 5 omega_r (throws std::invalid_argument otherwise).
KappaLimits kappa_asymptotics(const ModelParams& params);

// Full-basis amplitude vector of the block eigenvector (n, branch), branch
// being the ascending index within the n-block.
SymState dressed_state(const ModelParams& params, int n, int branch);

}  // namespace jcryd
