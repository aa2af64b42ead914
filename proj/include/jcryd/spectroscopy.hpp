#pragma once

// Autler-Townes spectroscopy: analytic per-flip peak positions, driven
// scan simulation with peak extraction, splitting-vs-Rabi tables, and
// Monte Carlo drift bands.

#include <cstdint>
#include <string>
#include <vector>

#include "jcryd/dynamics.hpp"
#include "jcryd/ladder.hpp"

namespace jcryd {

enum class SignalKind { TotalTransfer, PerFlipPopulations };

struct ScanConfig {
    std::vector<double> delta_uw_grid;  // strictly increasing
    double pulse_time = 0.0;
    double omega_uw = 0.0;
    SymIndex initial_state = SymIndex::ground(0);
    SignalKind signal = SignalKind::TotalTransfer;
    double peak_threshold = 0.1;  // fraction of the channel maximum
};

struct PeakInfo {
    double position = 0.0;  // probe detuning delta
    int n = 0;              // excitation number
    int branch = 0;         // ascending index within the n-block
    std::string label;      // "plus"/"minus" for K=1, "b<k>" otherwise
    bool ground_like = false;
    double height = 1.0;
    double width = 0.0;
};

struct PeakSet {
    std::vector<PeakInfo> peaks;
    // Non-interacting per-flip reference, one value per branch (= eps_{1,k}).
    std::vector<double> noninteracting;
    bool none_above_threshold = false;
};

struct Spectrum {
    std::vector<double> delta_uw;
    // One column for TotalTransfer; columns 0..N (population of |g,n>) for
    // PerFlipPopulations.
    std::vector<std::vector<double>> signals;  // signals[sample][column]
    PeakSet peaks;
};

// Analytic n-photon resonance positions delta_{n,k} = eps_{n,k} / n for
// every excitation number and branch, plus the non-interacting reference.
PeakSet peak_positions(const ModelParams& params);

// Full driven-dynamics scan of the probe detuning with local-maximum peak
// extraction; each extracted peak is assigned to the nearest analytic
// position (within its flip sector for PerFlipPopulations).
Spectrum simulate_scan(const ModelParams& params, const ScanConfig& scan);

struct SplittingRow {
    double omega_r;
    double single_atom;  // |eps_{1,+} - eps_{1,-}|
    double two_atom;     // |eps_{2,+} - eps_{2,-}|
};

// Raw-level splittings on resonance as a function of omega_r. Requires
// K = 1, N >= 2, and |delta_r| <= 1e-9 * max(grid).
std::vector<SplittingRow> splitting_vs_rabi(const ModelParams& tmpl,
                                            const std::vector<double>& omega_r_grid);

enum class SweepAxis { DeltaR, OmegaR };

struct BandCurve {
    int n = 0;
    int branch = -1;  // -1 for splitting curves
    std::vector<double> nominal;
    std::vector<double> lo;
    std::vector<double> hi;
};

struct DriftBand {
    SweepAxis axis = SweepAxis::DeltaR;
    std::vector<double> grid;
    std::vector<BandCurve> curves;
    double drift_fraction = 0.0;
    int sample_count = 0;
    std::uint64_t seed = 0;
};

// Pointwise min/max envelopes over `sample_count` multiplicative drift
// draws of (delta_r, omega_r), each uniform in [1-f, 1+f]; the nominal
// curve is always included in the envelope. DeltaR sweeps band the
// per-flip positions delta_{n,k}; OmegaR sweeps band the raw splittings
// per n. Draws are seeded per (sweep point, sample) so results do not
// depend on evaluation order.
DriftBand drift_bands(const ModelParams& params, SweepAxis axis,
                      const std::vector<double>& grid, double drift_fraction,
                      int sample_count, std::uint64_t seed);

// Deterministic counter-based stream (splitmix64).
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t i, std::uint64_t j);
    std::uint64_t next_u64();
    double uniform01();                       // [0, 1)
    double uniform(double lo, double hi);

  private:
    std::uint64_t state_;
};

}  // namespace jcryd
