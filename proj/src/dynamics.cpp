#include "jcryd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jcryd {

namespace {

constexpr double kNormTol = 1e-6;        // psi0 normalization precondition
constexpr double kConvergenceTol = 1e-8; // step-halving amplitude contract
constexpr double kDriftTol = 1e-9;       // unitarity contract
constexpr int kMaxHalvings = 8;

void require_normalized(const SymState& psi0) {
    if (std::abs(norm_sq(psi0) - 1.0) > kNormTol)
        throw std::invalid_argument("evolve: psi0 must be normalized");
}

ModelParams params_with(const ModelParams& base, const RampValues& v) {
    ModelParams p = base;
    p.omega_r = v.omega_r;
    p.delta_r = v.delta_r;
    return p;
}

double hamiltonian_inf_norm(const CMatrix& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
        worst = std::max(worst, row);
    }
    return worst;
}

}  // namespace

double RampProtocol::total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
}

RampValues RampProtocol::values_at(double t) const {
    double t0 = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        const bool last = i + 1 == segments.size();
        if (t <= t0 + s.duration || last) {
            const double f = s.duration > 0.0
                                 ? std::clamp((t - t0) / s.duration, 0.0, 1.0)
                                 : 1.0;
            auto lerp = [f](const std::pair<double, double>& v) {
                return v.first + f * (v.second - v.first);
            };
            return {lerp(s.delta_r), lerp(s.omega_r), lerp(s.omega_uw)};
        }
        t0 += s.duration;
    }
    throw std::logic_error("RampProtocol: empty protocol");
}

void RampProtocol::validate() const {
    if (segments.empty()) throw std::invalid_argument("RampProtocol: no segments");
    for (const auto& s : segments) {
        if (!(s.duration >= 0.0) || !std::isfinite(s.duration))
            throw std::invalid_argument("RampProtocol: segment duration must be >= 0");
    }
    if (!(total_duration() > 0.0))
        throw std::invalid_argument("RampProtocol: total duration must be > 0");
    if (!std::isfinite(delta_uw))
        throw std::invalid_argument("RampProtocol: delta_uw must be finite");
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        const auto& a = segments[i];
        const auto& b = segments[i + 1];
        if (std::abs(a.delta_r.second - b.delta_r.first) > 1e-12 ||
            std::abs(a.omega_r.second - b.omega_r.first) > 1e-12 ||
            std::abs(a.omega_uw.second - b.omega_uw.first) > 1e-12)
            throw std::invalid_argument("RampProtocol: discontinuous at a segment join");
    }
}

Propagator::Propagator(const HMatrix& h) {
    if (!is_hermitian(h)) throw std::invalid_argument("Propagator: Hermitian matrix required");
    eig_ = hermitian_eig(h.m);
    vectors_dagger_ = dagger(eig_.vectors);
}

SymState Propagator::apply(const SymState& psi0, double t) const {
    CVec w = matvec(vectors_dagger_, psi0);
    for (std::size_t k = 0; k < w.size(); ++k)
        w[k] *= std::polar(1.0, -eig_.values[k] * t);
    return matvec(eig_.vectors, w);
}

SymState evolve_static(const HMatrix& h, const SymState& psi0, double t) {
    require_normalized(psi0);
    return Propagator(h).apply(psi0, t);
}

namespace {

// Assembles the driven Hamiltonian for the protocol values at time t.
CMatrix driven_at(const RampProtocol& protocol, const ModelParams& base, double t) {
    const RampValues v = protocol.values_at(t);
    return build_driven(params_with(base, v), {v.omega_uw, protocol.delta_uw}).m;
}

// One RK4 pass over the whole protocol at fixed step h, capturing the state
// at the requested sample times (indices into the step grid).
SymState rk4_run(const RampProtocol& protocol, const ModelParams& base,
                 const SymState& psi0, double h, long steps,
                 const std::vector<long>& capture_steps,
                 std::vector<SymState>* captured) {
    const auto& kt = kernels::active();
    const std::size_t dim = psi0.size();
    SymState psi = psi0;
    CVec k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    const cplx minus_i(0.0, -1.0);

    std::size_t cap_pos = 0;
    auto maybe_capture = [&](long step_index) {
        if (captured == nullptr) return;
        while (cap_pos < capture_steps.size() && capture_steps[cap_pos] == step_index) {
            captured->push_back(psi);
            ++cap_pos;
        }
    };

    CMatrix h_t = driven_at(protocol, base, 0.0);
    maybe_capture(0);
    for (long s = 0; s < steps; ++s) {
        const double t = s * h;
        const CMatrix h_mid = driven_at(protocol, base, t + 0.5 * h);
        const CMatrix h_end = driven_at(protocol, base, t + h);

        kt.matvec(k1.data(), h_t.data(), psi.data(), dim, dim);
        kt.scale(k1.data(), minus_i, dim);

        tmp = psi;
        kt.axpy(tmp.data(), cplx(0.5 * h, 0.0), k1.data(), dim);
        kt.matvec(k2.data(), h_mid.data(), tmp.data(), dim, dim);
        kt.scale(k2.data(), minus_i, dim);

        tmp = psi;
        kt.axpy(tmp.data(), cplx(0.5 * h, 0.0), k2.data(), dim);
        kt.matvec(k3.data(), h_mid.data(), tmp.data(), dim, dim);
        kt.scale(k3.data(), minus_i, dim);

        tmp = psi;
        kt.axpy(tmp.data(), cplx(h, 0.0), k3.data(), dim);
        kt.matvec(k4.data(), h_end.data(), tmp.data(), dim, dim);
        kt.scale(k4.data(), minus_i, dim);

        const double w = h / 6.0;
        kt.axpy(psi.data(), cplx(w, 0.0), k1.data(), dim);
        kt.axpy(psi.data(), cplx(2.0 * w, 0.0), k2.data(), dim);
        kt.axpy(psi.data(), cplx(2.0 * w, 0.0), k3.data(), dim);
        kt.axpy(psi.data(), cplx(w, 0.0), k4.data(), dim);

        h_t = h_end;
        maybe_capture(s + 1);
    }
    return psi;
}

double max_amp_diff(const SymState& a, const SymState& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

double default_ramp_step(const RampProtocol& protocol, const ModelParams& params) {
    protocol.validate();
    double hmax = 0.0;
    double t0 = 0.0;
    for (const auto& s : protocol.segments) {
        hmax = std::max(hmax, hamiltonian_inf_norm(driven_at(protocol, params, t0)));
        t0 += s.duration;
        hmax = std::max(hmax, hamiltonian_inf_norm(driven_at(protocol, params, t0)));
    }
    const double total = protocol.total_duration();
    if (hmax <= 0.0) return total / 1000.0;
    return std::min(1e-3 * 2.0 * M_PI / hmax, total / 16.0);
}

EvolutionReport evolve_ramp(const RampProtocol& protocol, const ModelParams& params,
                            const SymState& psi0, double step) {
    protocol.validate();
    params.validate();
    require_normalized(psi0);
    if (!(step > 0.0)) throw std::invalid_argument("evolve_ramp: step must be > 0");

    const double total = protocol.total_duration();

    // Sample grid for the fidelity trace, kept on step boundaries.
    const int want_samples = 257;

    double h = std::min(step, total);
    long steps = std::max<long>(1, static_cast<long>(std::ceil(total / h)));
    h = total / static_cast<double>(steps);

    SymState prev = rk4_run(protocol, params, psi0, h, steps, {}, nullptr);
    SymState fine;
    int halvings = 0;
    for (;;) {
        steps *= 2;
        h = total / static_cast<double>(steps);
        fine = rk4_run(protocol, params, psi0, h, steps, {}, nullptr);
        if (max_amp_diff(prev, fine) < kConvergenceTol) break;
        if (++halvings > kMaxHalvings)
            throw std::runtime_error("evolve_ramp: integration failed to converge");
        prev = std::move(fine);
    }

    EvolutionReport report;
    report.step_used = h;
    report.norm_drift = std::abs(norm_sq(fine) - 1.0);
    if (report.norm_drift > kDriftTol)
        throw std::runtime_error("evolve_ramp: norm drift exceeds 1e-9");

    // Trace pass at the accepted step.
    std::vector<long> capture;
    const long stride = std::max<long>(1, steps / (want_samples - 1));
    for (long s = 0; s <= steps; s += stride) capture.push_back(s);
    if (capture.back() != steps) capture.push_back(steps);
    std::vector<SymState> snapshots;
    snapshots.reserve(capture.size());
    rk4_run(protocol, params, psi0, h, steps, capture, &snapshots);

    report.min_gap = std::numeric_limits<double>::infinity();
    CVec tracked;  // instantaneous eigenvector followed by overlap continuity
    for (std::size_t c = 0; c < capture.size(); ++c) {
        const double t = std::min(capture[c] * h, total);
        const EigResult eig = hermitian_eig(driven_at(protocol, params, t));
        const std::size_t dim = psi0.size();

        std::size_t pick = 0;
        double best = -1.0;
        CVec column(dim);
        const CVec& ref = (c == 0) ? psi0 : tracked;
        for (std::size_t k = 0; k < dim; ++k) {
            for (std::size_t i = 0; i < dim; ++i) column[i] = eig.vectors(i, k);
            const double ov = std::abs(dot(column, ref));
            if (ov > best) { best = ov; pick = k; }
        }
        tracked.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) tracked[i] = eig.vectors(i, pick);

        const double fid = std::norm(dot(tracked, snapshots[c]));
        report.fidelity_trace.emplace_back(t, fid);

        if (pick > 0)
            report.min_gap = std::min(report.min_gap, eig.values[pick] - eig.values[pick - 1]);
        if (pick + 1 < dim)
            report.min_gap = std::min(report.min_gap, eig.values[pick + 1] - eig.values[pick]);
    }

    report.final_state = std::move(fine);
    return report;
}

LadderResult instantaneous_spectrum(const RampProtocol& protocol, const ModelParams& params,
                                    double t) {
    protocol.validate();
    if (t < 0.0 || t > protocol.total_duration())
        throw std::out_of_range("instantaneous_spectrum: t outside the protocol");
    return ladder(params_with(params, protocol.values_at(t)));
}

}  // namespace jcryd
