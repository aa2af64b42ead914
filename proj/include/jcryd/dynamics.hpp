#pragma once

// Time evolution: static propagation by eigen-decomposition, ramps by
// fixed-step fourth-order integration with a step-halving convergence
// check, and adiabatic branch tracking by eigenvector-overlap continuity.

#include <utility>
#include <vector>

#include "jcryd/hamiltonians.hpp"
#include "jcryd/ladder.hpp"

namespace jcryd {

struct RampSegment {
    double duration = 0.0;
    std::pair<double, double> delta_r{0.0, 0.0};   // (start, end), linear
    std::pair<double, double> omega_r{0.0, 0.0};
    std::pair<double, double> omega_uw{0.0, 0.0};
};

struct RampValues {
    double delta_r;
    double omega_r;
    double omega_uw;
};

struct RampProtocol {
    std::vector<RampSegment> segments;
    double delta_uw = 0.0;  // probe detuning, held constant over the ramp

    double total_duration() const;
    RampValues values_at(double t) const;
    // Throws std::invalid_argument when durations are negative, the total
    // duration is zero, or parameter values jump at segment joins (> 1e-12).
    void validate() const;
};

struct EvolutionReport {
    SymState final_state;
    double norm_drift = 0.0;  // | ||psi(T)||^2 - 1 |
    // (t, |<tracked instantaneous eigenstate | psi(t)>|^2)
    std::vector<std::pair<double, double>> fidelity_trace;
    double min_gap = 0.0;  // smallest gap adjacent to the tracked branch
    double step_used = 0.0;
};

// Caches the eigen-decomposition of a static Hamiltonian so repeated
// evolutions (e.g. scan grids) stay cheap.
class Propagator {
  public:
    explicit Propagator(const HMatrix& h);  // throws on non-Hermitian input
    SymState apply(const SymState& psi0, double t) const;
    const EigResult& eig() const { return eig_; }

  private:
    EigResult eig_;
    CMatrix vectors_dagger_;
};

// psi(t) = exp(-i H t) psi0; requires Hermitian h and normalized psi0.
SymState evolve_static(const HMatrix& h, const SymState& psi0, double t);

// Integrates i d/dt psi = H(t) psi with the driven Hamiltonian rebuilt from
// the interpolated protocol values. The result is accepted once halving the
// step changes no final amplitude by 1e-8 or more; norm drift beyond 1e-9
// after the retries is an error (std::runtime_error).
EvolutionReport evolve_ramp(const RampProtocol& protocol, const ModelParams& params,
                            const SymState& psi0, double step);

// 1e-3 of the shortest dynamical period estimated from an infinity-norm
// bound of the driven Hamiltonian over the protocol's segment endpoints.
double default_ramp_step(const RampProtocol& protocol, const ModelParams& params);

// Ladder of the interpolated (omega_r, delta_r) at time t (probe ignored).
LadderResult instantaneous_spectrum(const RampProtocol& protocol, const ModelParams& params,
                                    double t);

}  // namespace jcryd
