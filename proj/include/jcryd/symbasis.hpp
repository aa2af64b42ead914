#pragma once

// Symmetric, perfectly blockaded basis for an ensemble of N three-level
// atoms (ground |0>, flipped |1>, one or more Rydberg channels |r_k>).
//
// Canonical ordering: the ground block |g,0> .. |g,N| first, then one
// excited block per channel, |e_k,0> .. |e_k,N-1>. A state |e_k,m> carries
// m flipped atoms plus the Rydberg atom, so its total flip number is m+1.
//
// Internal unit system: angular frequency with hbar = 1. All energies are
// taken relative to (total flips) * omega_hf; the linear ladder is only
// restored where an absolute-energy comparison is required.

#include <string>
#include <vector>

#include "jcryd/linalg.hpp"

namespace jcryd {

struct RydbergChannel {
    double rabi_scale = 1.0;       // channel Rabi = rabi_scale * omega_r
    double detuning_offset = 0.0;  // channel detuning = delta_r + offset
};

struct ModelParams {
    int n_atoms = 1;
    double omega_r = 0.0;  // Rabi frequency of channel 1 (angular)
    double delta_r = 0.0;  // laser detuning, signed (angular)
    double omega_hf = 0.0; // hyperfine splitting (angular)
    std::vector<RydbergChannel> channels{RydbergChannel{}};

    int n_channels() const { return static_cast<int>(channels.size()); }
    int sym_dim() const { return (n_atoms + 1) + n_channels() * n_atoms; }

    // Throws std::invalid_argument when an invariant is broken
    // (N >= 1, K >= 1, channel 1 = {1, 0}, finite values, omega_r >= 0).
    void validate() const;
};

struct SymIndex {
    enum class Kind { Ground, Excited };
    Kind kind = Kind::Ground;
    int channel = 0;  // 1-based, Excited only
    int n_flips = 0;  // atoms in |1>, excluding the Rydberg atom

    static SymIndex ground(int n) { return {Kind::Ground, 0, n}; }
    static SymIndex excited(int channel, int n) { return {Kind::Excited, channel, n}; }

    bool operator==(const SymIndex&) const = default;
};

// Amplitudes over the canonical ordering; squared norm stays 1 within 1e-9
// through any evolution.
using SymState = CVec;

std::vector<SymIndex> enumerate_basis(const ModelParams& params);

// Position of idx in the canonical ordering; bijective with
// enumerate_basis. Throws std::out_of_range for invalid indices.
int index_of(const SymIndex& idx, const ModelParams& params);

// Total flip number: n for |g,n>, n+1 for |e_k,n>.
int total_flips(const SymIndex& idx);

// Unit basis vector for idx.
SymState basis_state(const SymIndex& idx, const ModelParams& params);

std::string to_string(const SymIndex& idx);

}  // namespace jcryd
