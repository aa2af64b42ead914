#pragma once

// Strict-keyed JSON run configuration. Frequencies in config files are
// ordinary frequencies in MHz and are converted to angular units
// (rad/us) on load; times are microseconds. Unknown keys are errors.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "jcryd/dynamics.hpp"
#include "jcryd/spectroscopy.hpp"

namespace jcryd {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double mhz_to_angular(double mhz) { return mhz * kTwoPi; }
inline double angular_to_mhz(double w) { return w / kTwoPi; }

struct ConfigError : std::runtime_error {
    int line = 0;    // 1-based; 0 when not applicable
    int column = 0;
    ConfigError(const std::string& msg, int line_ = 0, int column_ = 0)
        : std::runtime_error(msg), line(line_), column(column_) {}
};

struct ScanSection {
    double delta_uw_min = 0.0;
    double delta_uw_max = 0.0;
    int points = 0;
    double pulse_time = 0.0;
    double omega_uw = 0.0;
    SignalKind signal = SignalKind::TotalTransfer;
    SymIndex initial_state = SymIndex::ground(0);
    double peak_threshold = 0.1;
};

struct RampInitial {
    bool dressed = true;
    int n = 1;                // dressed: excitation number
    int branch = -1;          // dressed: ascending branch index
    SymIndex basis = SymIndex::ground(0);
};

struct RampSection {
    RampProtocol protocol;
    double step = 0.0;  // 0 picks the default rule
    RampInitial initial;
};

struct PeaksSection {
    double min = 0.0;  // delta_r / omega_r
    double max = 0.0;
    int points = 0;
    std::optional<double> drift_fraction;
    int drift_samples = 400;
};

struct FitSection {
    std::vector<double> omega_r_grid;
    double noise_fraction = 0.0;
    bool constrain_origin = true;
};

struct VerifySection {
    bool infinite = true;
    double blockade = 0.0;
    int draws = 20;
    std::string fault_injection = "none";  // test hook: "sqrt_n_to_n"
};

struct OutputSection {
    std::string format = "csv";  // csv | json
    std::string path = "-";      // "-" = stdout
};

struct RunConfig {
    ModelParams model;
    std::optional<ScanSection> scan;
    std::optional<RampSection> ramp;
    std::optional<PeaksSection> peaks;
    std::optional<FitSection> fit;
    std::optional<VerifySection> verify;
    std::uint64_t seed = 0;
    OutputSection output;
};

// Throws ConfigError with line/column for syntax errors and with the
// offending key named for schema violations.
RunConfig parse_config(const std::string& text);

}  // namespace jcryd
