#include "jcryd/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jcryd {

namespace {

std::string branch_label(int k, int n_channels) {
    if (n_channels == 1) return k == 1 ? "plus" : "minus";
    return "b" + std::to_string(k);
}

// Ground-like flag per branch: K=1 follows the detuning-sign convention;
// K>=2 marks the branch with the dominant |g,n> weight (upper on ties).
std::vector<bool> ground_like_flags(const LadderResult& lr, int n) {
    const std::size_t nb = lr.eps[n - 1].size();
    std::vector<bool> flags(nb, false);
    if (lr.n_channels == 1) {
        flags[lr.ground_like_index(n)] = true;
        return flags;
    }
    std::size_t best = 0;
    double w = -1.0;
    for (std::size_t k = 0; k < nb; ++k) {
        const double gw = std::norm(lr.vectors[n - 1](0, k));
        if (gw >= w) { w = gw; best = k; }
    }
    flags[best] = true;
    return flags;
}

}  // namespace

PeakSet peak_positions(const ModelParams& params) {
    const LadderResult lr = ladder(params);
    PeakSet out;
    for (int n = 1; n <= params.n_atoms; ++n) {
        const auto flags = ground_like_flags(lr, n);
        for (std::size_t k = 0; k < lr.eps[n - 1].size(); ++k) {
            PeakInfo p;
            p.position = lr.eps[n - 1][k] / static_cast<double>(n);
            p.n = n;
            p.branch = static_cast<int>(k);
            p.label = branch_label(static_cast<int>(k), params.n_channels());
            p.ground_like = flags[k];
            out.peaks.push_back(p);
        }
    }
    out.noninteracting = lr.eps[0];
    return out;
}

namespace {

struct RawPeak {
    double position;
    double height;
    double width;
};

// Local maxima above threshold with parabolic position refinement.
std::vector<RawPeak> extract_peaks(const std::vector<double>& x, const std::vector<double>& y,
                                   double threshold_fraction) {
    std::vector<RawPeak> out;
    const double ymax = y.empty() ? 0.0 : *std::max_element(y.begin(), y.end());
    if (ymax <= 0.0) return out;
    const double floor_val = threshold_fraction * ymax;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        if (y[i] < floor_val) continue;

        const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
        double pos = x[i];
        if (denom < 0.0) {
            double shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
            shift = std::clamp(shift, -0.5, 0.5);
            pos = x[i] + shift * (x[i + 1] - x[i]);
        }

        // Rough width: span above half of this peak's height.
        const double half = 0.5 * y[i];
        std::size_t l = i, r = i;
        while (l > 0 && y[l] > half) --l;
        while (r + 1 < y.size() && y[r] > half) ++r;
        out.push_back({pos, y[i], x[r] - x[l]});
    }
    return out;
}

}  // namespace

Spectrum simulate_scan(const ModelParams& params, const ScanConfig& scan) {
    params.validate();
    if (scan.delta_uw_grid.size() < 2)
        throw std::invalid_argument("simulate_scan: need at least two grid points");
    for (std::size_t i = 0; i + 1 < scan.delta_uw_grid.size(); ++i)
        if (!(scan.delta_uw_grid[i] < scan.delta_uw_grid[i + 1]))
            throw std::invalid_argument("simulate_scan: grid must be strictly increasing");
    if (!(scan.pulse_time > 0.0))
        throw std::invalid_argument("simulate_scan: pulse_time must be > 0");
    if (scan.omega_uw < 0.0)
        throw std::invalid_argument("simulate_scan: omega_uw must be >= 0");

    const int N = params.n_atoms;
    const SymState psi0 = basis_state(scan.initial_state, params);

    Spectrum spec;
    spec.delta_uw = scan.delta_uw_grid;
    spec.signals.reserve(scan.delta_uw_grid.size());
    for (double delta : scan.delta_uw_grid) {
        const HMatrix h = build_driven(params, {scan.omega_uw, delta});
        const SymState psi = Propagator(h).apply(psi0, scan.pulse_time);
        std::vector<double> row;
        if (scan.signal == SignalKind::TotalTransfer) {
            row.push_back(1.0 - std::norm(dot(psi0, psi)));
        } else {
            for (int n = 0; n <= N; ++n)
                row.push_back(std::norm(psi[index_of(SymIndex::ground(n), params)]));
        }
        spec.signals.push_back(std::move(row));
    }

    const PeakSet analytic = peak_positions(params);
    spec.peaks.noninteracting = analytic.noninteracting;

    auto column = [&](std::size_t c) {
        std::vector<double> y(spec.signals.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = spec.signals[i][c];
        return y;
    };

    auto assign = [&](const RawPeak& raw, int restrict_n) {
        const PeakInfo* best = nullptr;
        double dist = 0.0;
        for (const auto& a : analytic.peaks) {
            if (restrict_n > 0 && a.n != restrict_n) continue;
            const double d = std::abs(a.position - raw.position);
            if (best == nullptr || d < dist) { best = &a; dist = d; }
        }
        PeakInfo p = *best;
        p.position = raw.position;
        p.height = raw.height;
        p.width = raw.width;
        return p;
    };

    std::vector<PeakInfo> found;
    if (scan.signal == SignalKind::TotalTransfer) {
        for (const auto& raw : extract_peaks(spec.delta_uw, column(0), scan.peak_threshold))
            found.push_back(assign(raw, 0));
    } else {
        for (int n = 1; n <= N; ++n)
            for (const auto& raw :
                 extract_peaks(spec.delta_uw, column(static_cast<std::size_t>(n)),
                               scan.peak_threshold))
                found.push_back(assign(raw, n));
    }

    // Merged peaks sharing an assignment: keep the taller one.
    std::vector<PeakInfo> merged;
    for (const auto& p : found) {
        auto same = std::find_if(merged.begin(), merged.end(), [&](const PeakInfo& q) {
            return q.n == p.n && q.branch == p.branch;
        });
        if (same == merged.end())
            merged.push_back(p);
        else if (p.height > same->height)
            *same = p;
    }
    std::sort(merged.begin(), merged.end(),
              [](const PeakInfo& a, const PeakInfo& b) { return a.position < b.position; });
    spec.peaks.peaks = std::move(merged);
    spec.peaks.none_above_threshold = spec.peaks.peaks.empty();
    return spec;
}

std::vector<SplittingRow> splitting_vs_rabi(const ModelParams& tmpl,
                                            const std::vector<double>& omega_r_grid) {
    tmpl.validate();
    if (tmpl.n_channels() != 1)
        throw std::invalid_argument("splitting_vs_rabi: requires K = 1");
    if (tmpl.n_atoms < 2)
        throw std::invalid_argument("splitting_vs_rabi: requires N >= 2");
    double grid_max = 0.0;
    for (double w : omega_r_grid) {
        if (w < 0.0) throw std::invalid_argument("splitting_vs_rabi: omega_r must be >= 0");
        grid_max = std::max(grid_max, w);
    }
    if (!(std::abs(tmpl.delta_r) <= 1e-9 * grid_max))
        throw std::invalid_argument("splitting_vs_rabi: requires delta_r = 0");

    std::vector<SplittingRow> rows;
    rows.reserve(omega_r_grid.size());
    for (double w : omega_r_grid) {
        ModelParams p = tmpl;
        p.omega_r = w;
        const LadderResult lr = ladder(p);
        rows.push_back({w, lr.splitting[0], lr.splitting[1]});
    }
    return rows;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    // Distinct streams per (seed, i, j); constants from splitmix64.
    state_ = seed;
    state_ ^= 0x9E3779B97F4A7C15ULL * (i + 1);
    next_u64();
    state_ ^= 0xBF58476D1CE4E5B9ULL * (j + 1);
    next_u64();
}

std::uint64_t CounterRng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

DriftBand drift_bands(const ModelParams& params, SweepAxis axis,
                      const std::vector<double>& grid, double drift_fraction,
                      int sample_count, std::uint64_t seed) {
    params.validate();
    if (drift_fraction < 0.0)
        throw std::invalid_argument("drift_bands: drift_fraction must be >= 0");
    if (sample_count < 2) throw std::invalid_argument("drift_bands: sample_count must be >= 2");

    DriftBand band;
    band.axis = axis;
    band.grid = grid;
    band.drift_fraction = drift_fraction;
    band.sample_count = sample_count;
    band.seed = seed;

    const int N = params.n_atoms;
    const int K = params.n_channels();

    auto quantities = [&](const ModelParams& p) {
        const LadderResult lr = ladder(p);
        std::vector<double> q;
        if (axis == SweepAxis::DeltaR) {
            for (int n = 1; n <= N; ++n)
                for (std::size_t k = 0; k < lr.eps[n - 1].size(); ++k)
                    q.push_back(lr.eps[n - 1][k] / static_cast<double>(n));
        } else {
            for (int n = 1; n <= N; ++n) q.push_back(lr.splitting[n - 1]);
        }
        return q;
    };

    if (axis == SweepAxis::DeltaR) {
        for (int n = 1; n <= N; ++n)
            for (int k = 0; k <= (K == 1 ? 1 : K); ++k) {
                BandCurve c;
                c.n = n;
                c.branch = k;
                band.curves.push_back(std::move(c));
            }
    } else {
        for (int n = 1; n <= N; ++n) {
            BandCurve c;
            c.n = n;
            band.curves.push_back(std::move(c));
        }
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        ModelParams nominal = params;
        if (axis == SweepAxis::DeltaR)
            nominal.delta_r = grid[i];
        else
            nominal.omega_r = grid[i];

        const std::vector<double> base = quantities(nominal);
        std::vector<double> lo = base, hi = base;

        for (int j = 0; j < sample_count; ++j) {
            CounterRng rng(seed, i, static_cast<std::uint64_t>(j));
            ModelParams drawn = nominal;
            drawn.delta_r *= rng.uniform(1.0 - drift_fraction, 1.0 + drift_fraction);
            drawn.omega_r *= rng.uniform(1.0 - drift_fraction, 1.0 + drift_fraction);
            const std::vector<double> q = quantities(drawn);
            for (std::size_t c = 0; c < q.size(); ++c) {
                lo[c] = std::min(lo[c], q[c]);
                hi[c] = std::max(hi[c], q[c]);
            }
        }

        for (std::size_t c = 0; c < band.curves.size(); ++c) {
            band.curves[c].nominal.push_back(base[c]);
            band.curves[c].lo.push_back(lo[c]);
            band.curves[c].hi.push_back(hi[c]);
        }
    }
    return band;
}

}  // namespace jcryd
