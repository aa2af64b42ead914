#pragma once

// Least-squares post-processing: linear fits of splitting-vs-Rabi tables
// and slope-ratio extraction with first-order uncertainty propagation.

#include <utility>
#include <vector>

namespace jcryd {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;  // exactly 0 in origin-constrained mode
    double slope_std_err = 0.0;
    double residual_rms = 0.0;
    int point_count = 0;
    bool origin_constrained = false;
};

// Ordinary least squares; throws std::invalid_argument for fewer than two
// points or a degenerate design (all x equal / all x zero when
// constrained). The standard error needs at least one residual degree of
// freedom and is reported as 0 otherwise.
LinearFit fit_linear(const std::vector<std::pair<double, double>>& points,
                     bool constrain_origin);

struct SlopeRatio {
    double ratio = 0.0;
    double std_err = 0.0;
};

// ratio = two-atom slope / single-atom slope; both slopes must be > 0.
SlopeRatio slope_ratio(const LinearFit& fit_two_atom, const LinearFit& fit_single);

}  // namespace jcryd
