#include "jcryd/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace jcryd {

LinearFit fit_linear(const std::vector<std::pair<double, double>>& points,
                     bool constrain_origin) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw std::invalid_argument("fit_linear: need at least two points");

    LinearFit fit;
    fit.point_count = n;
    fit.origin_constrained = constrain_origin;

    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) { sx += x; sy += y; }
    const double mx = sx / n, my = sy / n;

    double rss = 0.0;
    int dof = 0;
    double denom = 0.0;
    if (constrain_origin) {
        double sxx = 0.0, sxy = 0.0;
        for (const auto& [x, y] : points) { sxx += x * x; sxy += x * y; }
        if (sxx == 0.0) throw std::invalid_argument("fit_linear: degenerate x values");
        fit.slope = sxy / sxx;
        fit.intercept = 0.0;
        for (const auto& [x, y] : points) {
            const double r = y - fit.slope * x;
            rss += r * r;
        }
        dof = n - 1;
        denom = sxx;
    } else {
        double sxx = 0.0, sxy = 0.0;
        for (const auto& [x, y] : points) {
            sxx += (x - mx) * (x - mx);
            sxy += (x - mx) * (y - my);
        }
        if (sxx == 0.0) throw std::invalid_argument("fit_linear: degenerate x values");
        fit.slope = sxy / sxx;
        fit.intercept = my - fit.slope * mx;
        for (const auto& [x, y] : points) {
            const double r = y - (fit.slope * x + fit.intercept);
            rss += r * r;
        }
        dof = n - 2;
        denom = sxx;
    }

    fit.residual_rms = std::sqrt(rss / n);
    fit.slope_std_err = dof > 0 ? std::sqrt(rss / dof / denom) : 0.0;
    return fit;
}

SlopeRatio slope_ratio(const LinearFit& fit_two_atom, const LinearFit& fit_single) {
    if (!(fit_two_atom.slope > 0.0) || !(fit_single.slope > 0.0))
        throw std::invalid_argument("slope_ratio: slopes must be > 0");
    SlopeRatio out;
    out.ratio = fit_two_atom.slope / fit_single.slope;
    out.std_err = out.ratio * std::hypot(fit_two_atom.slope_std_err / fit_two_atom.slope,
                                         fit_single.slope_std_err / fit_single.slope);
    return out;
}

}  // namespace jcryd
