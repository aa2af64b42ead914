#include "jcryd/symbasis.hpp"

#include <cmath>
#include <stdexcept>

namespace jcryd {

void ModelParams::validate() const {
    if (n_atoms < 1) throw std::invalid_argument("ModelParams: n_atoms must be >= 1");
    if (channels.empty()) throw std::invalid_argument("ModelParams: need at least one channel");
    if (!(channels[0].rabi_scale == 1.0 && channels[0].detuning_offset == 0.0))
        throw std::invalid_argument("ModelParams: channel 1 must have rabi_scale 1 and offset 0");
    if (!std::isfinite(omega_r) || !std::isfinite(delta_r) || !std::isfinite(omega_hf))
        throw std::invalid_argument("ModelParams: frequencies must be finite");
    if (omega_r < 0.0) throw std::invalid_argument("ModelParams: omega_r must be >= 0");
    if (omega_hf < 0.0) throw std::invalid_argument("ModelParams: omega_hf must be >= 0");
    for (const auto& ch : channels) {
        if (!std::isfinite(ch.rabi_scale) || !std::isfinite(ch.detuning_offset))
            throw std::invalid_argument("ModelParams: channel values must be finite");
        if (ch.rabi_scale < 0.0)
            throw std::invalid_argument("ModelParams: rabi_scale must be >= 0");
    }
}

std::vector<SymIndex> enumerate_basis(const ModelParams& params) {
    params.validate();
    std::vector<SymIndex> basis;
    basis.reserve(params.sym_dim());
    for (int n = 0; n <= params.n_atoms; ++n) basis.push_back(SymIndex::ground(n));
    for (int k = 1; k <= params.n_channels(); ++k)
        for (int n = 0; n < params.n_atoms; ++n) basis.push_back(SymIndex::excited(k, n));
    return basis;
}

int index_of(const SymIndex& idx, const ModelParams& params) {
    const int N = params.n_atoms;
    if (idx.kind == SymIndex::Kind::Ground) {
        if (idx.n_flips < 0 || idx.n_flips > N)
            throw std::out_of_range("index_of: ground n_flips out of range");
        return idx.n_flips;
    }
    if (idx.channel < 1 || idx.channel > params.n_channels())
        throw std::out_of_range("index_of: channel out of range");
    if (idx.n_flips < 0 || idx.n_flips > N - 1)
        throw std::out_of_range("index_of: excited n_flips out of range");
    return (N + 1) + (idx.channel - 1) * N + idx.n_flips;
}

int total_flips(const SymIndex& idx) {
    return idx.kind == SymIndex::Kind::Ground ? idx.n_flips : idx.n_flips + 1;
}

SymState basis_state(const SymIndex& idx, const ModelParams& params) {
    SymState psi(params.sym_dim(), cplx(0.0, 0.0));
    psi[index_of(idx, params)] = cplx(1.0, 0.0);
    return psi;
}

std::string to_string(const SymIndex& idx) {
    if (idx.kind == SymIndex::Kind::Ground)
        return "|g," + std::to_string(idx.n_flips) + ">";
    return "|e" + std::to_string(idx.channel) + "," + std::to_string(idx.n_flips) + ">";
}

}  // namespace jcryd
