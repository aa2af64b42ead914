// jcryd: collective Rydberg-dressing spectroscopy toolkit.
//
// Subcommands: ladder, peaks, scan, ramp, fit, verify. All take a strict
// JSON config (see README). Exit codes: 0 ok, 2 config error, 3 numeric
// error, 4 verification failed.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "jcryd/analysis.hpp"
#include "jcryd/config.hpp"
#include "jcryd/dynamics.hpp"
#include "jcryd/ladder.hpp"
#include "jcryd/oracle.hpp"
#include "jcryd/output.hpp"
#include "jcryd/spectroscopy.hpp"

namespace {

using namespace jcryd;

struct Options {
    std::string config_path;
    std::string out_override;
    std::string format_override;
    std::optional<std::uint64_t> seed_override;
};

RunConfig load_config(const Options& opt) {
    std::ifstream f(opt.config_path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file: " + opt.config_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    RunConfig cfg = parse_config(ss.str());
    if (opt.seed_override) cfg.seed = *opt.seed_override;
    if (!opt.out_override.empty()) cfg.output.path = opt.out_override;
    if (!opt.format_override.empty()) cfg.output.format = opt.format_override;
    return cfg;
}

void emit(const RunConfig& cfg, const Table& table, const nlohmann::json& doc) {
    if (cfg.output.format == "json")
        write_output(cfg.output.path, doc.dump(2) + "\n");
    else
        write_output(cfg.output.path, to_csv(table));
}

std::string branch_name(int k, int n_channels) {
    if (n_channels == 1) return k == 1 ? "plus" : "minus";
    return "b" + std::to_string(k);
}

int cmd_ladder(const RunConfig& cfg) {
    const LadderResult lr = ladder(cfg.model);
    const int K = cfg.model.n_channels();

    Table t;
    t.columns = {"n", "branch", "epsilon_mhz", "splitting_mhz", "kappa_plus_mhz",
                 "kappa_minus_mhz"};
    for (int n = 1; n <= cfg.model.n_atoms; ++n) {
        for (std::size_t k = 0; k < lr.eps[n - 1].size(); ++k) {
            std::vector<Cell> row;
            row.emplace_back(static_cast<std::int64_t>(n));
            row.emplace_back(branch_name(static_cast<int>(k), K));
            row.emplace_back(angular_to_mhz(lr.eps[n - 1][k]));
            row.emplace_back(angular_to_mhz(lr.splitting[n - 1]));
            if (K == 1) {
                row.emplace_back(angular_to_mhz(lr.kappa_plus));
                row.emplace_back(angular_to_mhz(lr.kappa_minus));
            } else if (!lr.kappa_branch.empty()) {
                row.emplace_back(angular_to_mhz(lr.kappa_branch[k]));
                row.emplace_back(std::string());
            } else {
                row.emplace_back(std::string());
                row.emplace_back(std::string());
            }
            t.rows.push_back(std::move(row));
        }
    }
    emit(cfg, t, nlohmann::json{{"ladder", to_json(t)}});
    return 0;
}

int cmd_peaks(const RunConfig& cfg) {
    if (!cfg.peaks) throw ConfigError("subcommand 'peaks' needs a 'peaks' section");
    const PeaksSection& ps = *cfg.peaks;
    const double omega = cfg.model.omega_r;
    if (!(omega > 0.0)) throw ConfigError("peaks: model omega_r must be > 0 for normalization");

    std::vector<double> delta_grid(ps.points);
    for (int i = 0; i < ps.points; ++i)
        delta_grid[i] = omega * (ps.min + (ps.max - ps.min) * i / (ps.points - 1));

    const double fraction = ps.drift_fraction.value_or(0.0);
    const int samples = ps.drift_fraction ? ps.drift_samples : 2;
    const DriftBand band = drift_bands(cfg.model, SweepAxis::DeltaR, delta_grid, fraction,
                                       samples, cfg.seed);

    // Curve index of (n = 1, branch k) for the non-interacting reference.
    auto reference_curve = [&](int branch) -> const BandCurve& {
        for (const auto& c : band.curves)
            if (c.n == 1 && c.branch == branch) return c;
        throw std::logic_error("peaks: missing reference curve");
    };

    Table t;
    t.columns = {"delta_over_omega", "n",        "branch",
                 "delta_uw_over_omega", "band_low", "band_high",
                 "noninteracting_reference"};
    for (std::size_t i = 0; i < band.grid.size(); ++i) {
        for (const auto& c : band.curves) {
            std::vector<Cell> row;
            row.emplace_back(band.grid[i] / omega);
            row.emplace_back(static_cast<std::int64_t>(c.n));
            row.emplace_back(branch_name(c.branch, cfg.model.n_channels()));
            row.emplace_back(c.nominal[i] / omega);
            row.emplace_back(c.lo[i] / omega);
            row.emplace_back(c.hi[i] / omega);
            row.emplace_back(reference_curve(c.branch).nominal[i] / omega);
            t.rows.push_back(std::move(row));
        }
    }
    emit(cfg, t, nlohmann::json{{"peaks", to_json(t)}});
    return 0;
}

int cmd_scan(const RunConfig& cfg) {
    if (!cfg.scan) throw ConfigError("subcommand 'scan' needs a 'scan' section");
    const ScanSection& sc = *cfg.scan;

    ScanConfig scan;
    scan.delta_uw_grid.resize(sc.points);
    for (int i = 0; i < sc.points; ++i)
        scan.delta_uw_grid[i] =
            sc.delta_uw_min + (sc.delta_uw_max - sc.delta_uw_min) * i / (sc.points - 1);
    scan.pulse_time = sc.pulse_time;
    scan.omega_uw = sc.omega_uw;
    scan.signal = sc.signal;
    scan.initial_state = sc.initial_state;
    scan.peak_threshold = sc.peak_threshold;

    const Spectrum spec = simulate_scan(cfg.model, scan);

    // Grid row nearest each refined peak gets flagged.
    std::vector<int> peak_at(spec.delta_uw.size(), -1);
    for (std::size_t p = 0; p < spec.peaks.peaks.size(); ++p) {
        std::size_t best = 0;
        double dist = std::abs(spec.delta_uw[0] - spec.peaks.peaks[p].position);
        for (std::size_t i = 1; i < spec.delta_uw.size(); ++i) {
            const double d = std::abs(spec.delta_uw[i] - spec.peaks.peaks[p].position);
            if (d < dist) { dist = d; best = i; }
        }
        peak_at[best] = static_cast<int>(p);
    }

    Table t;
    t.columns = {"delta_uw_mhz"};
    if (sc.signal == SignalKind::TotalTransfer) {
        t.columns.push_back("transfer");
    } else {
        for (int n = 0; n <= cfg.model.n_atoms; ++n)
            t.columns.push_back("p_g" + std::to_string(n));
    }
    t.columns.insert(t.columns.end(), {"peak", "peak_n", "peak_branch"});
    for (std::size_t i = 0; i < spec.delta_uw.size(); ++i) {
        std::vector<Cell> row;
        row.emplace_back(angular_to_mhz(spec.delta_uw[i]));
        for (double v : spec.signals[i]) row.emplace_back(v);
        if (peak_at[i] >= 0) {
            const PeakInfo& p = spec.peaks.peaks[peak_at[i]];
            row.emplace_back(static_cast<std::int64_t>(1));
            row.emplace_back(static_cast<std::int64_t>(p.n));
            row.emplace_back(p.label);
        } else {
            row.emplace_back(static_cast<std::int64_t>(0));
            row.emplace_back(std::string());
            row.emplace_back(std::string());
        }
        t.rows.push_back(std::move(row));
    }

    Table peaks_table;
    peaks_table.columns = {"position_mhz", "n", "branch", "ground_like", "height", "width_mhz"};
    for (const auto& p : spec.peaks.peaks) {
        peaks_table.rows.push_back({angular_to_mhz(p.position),
                                    static_cast<std::int64_t>(p.n), p.label,
                                    static_cast<std::int64_t>(p.ground_like ? 1 : 0), p.height,
                                    angular_to_mhz(p.width)});
    }
    nlohmann::json doc{{"samples", to_json(t)},
                       {"peaks", to_json(peaks_table)},
                       {"no_peaks_above_threshold", spec.peaks.none_above_threshold}};
    emit(cfg, t, doc);
    return 0;
}

int cmd_ramp(const RunConfig& cfg) {
    if (!cfg.ramp) throw ConfigError("subcommand 'ramp' needs a 'ramp' section");
    const RampSection& rs = *cfg.ramp;

    const RampValues v0 = rs.protocol.values_at(0.0);
    ModelParams p0 = cfg.model;
    p0.omega_r = v0.omega_r;
    p0.delta_r = v0.delta_r;

    SymState psi0;
    if (rs.initial.dressed) {
        int branch = rs.initial.branch;
        if (cfg.model.n_channels() == 1 && branch > 1)
            throw ConfigError("ramp.initial.dressed: branch index out of range for K = 1");
        psi0 = dressed_state(p0, rs.initial.n, branch);
    } else {
        psi0 = basis_state(rs.initial.basis, cfg.model);
    }

    const double step = rs.step > 0.0 ? rs.step : default_ramp_step(rs.protocol, cfg.model);
    const EvolutionReport report = evolve_ramp(rs.protocol, cfg.model, psi0, step);
    const double final_fidelity =
        report.fidelity_trace.empty() ? 0.0 : report.fidelity_trace.back().second;

    Table t;
    t.columns = {"t_us", "fidelity", "final_fidelity", "min_gap_mhz", "norm_drift", "step_us"};
    for (const auto& [time, fid] : report.fidelity_trace) {
        t.rows.push_back({time, fid, final_fidelity, angular_to_mhz(report.min_gap),
                          report.norm_drift, report.step_used});
    }
    nlohmann::json doc{{"trace", to_json(t)},
                       {"summary",
                        {{"final_fidelity", final_fidelity},
                         {"min_gap_mhz", angular_to_mhz(report.min_gap)},
                         {"norm_drift", report.norm_drift},
                         {"step_us", report.step_used}}}};
    emit(cfg, t, doc);
    return 0;
}

int cmd_fit(const RunConfig& cfg) {
    if (!cfg.fit) throw ConfigError("subcommand 'fit' needs a 'fit' section");
    const FitSection& fs = *cfg.fit;

    const auto rows = splitting_vs_rabi(cfg.model, fs.omega_r_grid);
    std::vector<std::pair<double, double>> single_pts, two_pts;
    std::vector<double> single_vals, two_vals;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double s = rows[i].single_atom;
        double d = rows[i].two_atom;
        if (fs.noise_fraction > 0.0) {
            CounterRng rng_s(cfg.seed, i, 0);
            CounterRng rng_d(cfg.seed, i, 1);
            s *= rng_s.uniform(1.0 - fs.noise_fraction, 1.0 + fs.noise_fraction);
            d *= rng_d.uniform(1.0 - fs.noise_fraction, 1.0 + fs.noise_fraction);
        }
        single_vals.push_back(s);
        two_vals.push_back(d);
        single_pts.emplace_back(rows[i].omega_r, s);
        two_pts.emplace_back(rows[i].omega_r, d);
    }

    const LinearFit fit_single = fit_linear(single_pts, fs.constrain_origin);
    const LinearFit fit_two = fit_linear(two_pts, fs.constrain_origin);
    const SlopeRatio ratio = slope_ratio(fit_two, fit_single);

    Table t;
    t.columns = {"omega_r_mhz",  "single_mhz",      "two_atom_mhz", "ratio",
                 "ratio_std_err", "slope_single",   "slope_two_atom"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        t.rows.push_back({angular_to_mhz(rows[i].omega_r), angular_to_mhz(single_vals[i]),
                          angular_to_mhz(two_vals[i]), ratio.ratio, ratio.std_err,
                          fit_single.slope, fit_two.slope});
    }
    nlohmann::json doc{{"points", to_json(t)},
                       {"fit",
                        {{"ratio", ratio.ratio},
                         {"ratio_std_err", ratio.std_err},
                         {"slope_single", fit_single.slope},
                         {"slope_single_std_err", fit_single.slope_std_err},
                         {"slope_two_atom", fit_two.slope},
                         {"slope_two_atom_std_err", fit_two.slope_std_err}}}};
    emit(cfg, t, doc);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    if (!cfg.verify) throw ConfigError("subcommand 'verify' needs a 'verify' section");
    const VerifySection& vs = *cfg.verify;

    bool all_pass = true;
    Table t;
    t.columns = {"draw", "omega_r_mhz", "delta_r_mhz", "max_matrix_dev_mhz",
                 "max_eigenvalue_dev_mhz", "threshold_mhz", "pass"};
    for (int d = 0; d < vs.draws; ++d) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(d), 0);
        ModelParams p = cfg.model;
        p.omega_r = mhz_to_angular(rng.uniform(0.2, 4.0));
        p.delta_r = mhz_to_angular(rng.uniform(-5.0, 5.0));

        HMatrix h_ref = build_symmetric(p);
        if (vs.fault_injection == "sqrt_n_to_n") {
            // Test hook: collective couplings scaled sqrt(n) -> n.
            for (int k = 1; k <= p.n_channels(); ++k) {
                for (int n = 1; n <= p.n_atoms; ++n) {
                    const int ei = index_of(SymIndex::excited(k, n - 1), p);
                    const int gi = index_of(SymIndex::ground(n), p);
                    const double extra = std::sqrt(static_cast<double>(n));
                    h_ref.m(ei, gi) *= extra;
                    h_ref.m(gi, ei) *= extra;
                }
            }
        }

        ProductParams pp{p, vs.infinite ? Blockade::infinitely_strong()
                                        : Blockade::finite(vs.blockade)};
        const ProjectionReport rep = compare_projection(pp, h_ref);

        double threshold, deviation;
        if (vs.infinite) {
            threshold = 1e-12 * std::max(1.0, max_abs(h_ref.m));
            deviation = rep.max_matrix_deviation;
        } else {
            // Documented acceptance bound for the second-order leakage.
            threshold = 5.0 * p.n_atoms * p.omega_r * p.omega_r / vs.blockade;
            deviation = rep.max_eigenvalue_deviation;
        }
        const bool pass = deviation <= threshold;
        all_pass = all_pass && pass;
        t.rows.push_back({static_cast<std::int64_t>(d), angular_to_mhz(p.omega_r),
                          angular_to_mhz(p.delta_r),
                          angular_to_mhz(rep.max_matrix_deviation),
                          angular_to_mhz(rep.max_eigenvalue_deviation),
                          angular_to_mhz(threshold),
                          static_cast<std::int64_t>(pass ? 1 : 0)});
    }
    nlohmann::json doc{{"checks", to_json(t)}, {"pass", all_pass}};
    emit(cfg, t, doc);
    return all_pass ? 0 : 4;
}

int dispatch(const std::string& name, const Options& opt) {
    try {
        const RunConfig cfg = load_config(opt);
        if (name == "ladder") return cmd_ladder(cfg);
        if (name == "peaks") return cmd_peaks(cfg);
        if (name == "scan") return cmd_scan(cfg);
        if (name == "ramp") return cmd_ramp(cfg);
        if (name == "fit") return cmd_fit(cfg);
        if (name == "verify") return cmd_verify(cfg);
        std::cerr << "unknown subcommand: " << name << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collective Rydberg-dressing spectroscopy toolkit"};
    app.require_subcommand(1);

    Options opt;
    int exit_code = 0;
    const struct { const char* name; const char* help; } subs[] = {
        {"ladder", "dressed-state ladder table"},
        {"peaks", "spectroscopy branch positions vs detuning"},
        {"scan", "driven probe-detuning scan"},
        {"ramp", "adiabatic ramp evolution"},
        {"fit", "splitting-vs-Rabi fits and slope ratio"},
        {"verify", "product-space oracle comparison"},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--config", opt.config_path, "JSON config file")->required();
        sub->add_option("--out", opt.out_override, "output path ('-' = stdout)");
        sub->add_option("--seed", opt.seed_override, "seed override");
        sub->add_option("--format", opt.format_override, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->callback([&exit_code, &opt, name = std::string(s.name)] {
            exit_code = dispatch(name, opt);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return exit_code;
}
