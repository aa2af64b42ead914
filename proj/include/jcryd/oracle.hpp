#pragma once

// Full product-space reference model: finite or infinite blockade, the
// symmetrizer isometry into the product space, and the projection
// equivalence checks against the symmetric model.

#include <cstdint>

#include "jcryd/hamiltonians.hpp"

namespace jcryd {

struct Blockade {
    bool infinite = true;
    double strength = 0.0;  // pairwise energy penalty, angular (finite case)

    static Blockade infinitely_strong() { return {true, 0.0}; }
    static Blockade finite(double b) { return {false, b}; }
};

struct ProductParams {
    ModelParams base;
    Blockade blockade = Blockade::infinitely_strong();
};

// Levels per atom: |0>, |1>, |r_1> .. |r_K>. State index encodes atom 0 in
// the most significant base-(2+K) digit.
std::size_t product_dim(const ProductParams& params);  // guard: <= 1e5

// Laser-frame product Hamiltonian with energies relative to
// (total flips) * omega_hf. Finite blockade adds B per Rydberg pair;
// infinite blockade zeroes every row/column touching a state with more
// than one Rydberg excitation.
HMatrix build_product(const ProductParams& params);

struct Symmetrizer {
    CMatrix isometry;  // product_dim x sym_dim, orthonormal columns
};

// Maps each symmetric basis state to the normalized equal superposition
// over all product-space permutations realizing it.
Symmetrizer symmetrize(const ProductParams& params);

struct ProjectionReport {
    double max_matrix_deviation = 0.0;      // max |S^dag H S - H_sym|
    double max_eigenvalue_deviation = 0.0;  // over overlap-matched eigenpairs
};

// Compares the product model against the symmetric model: exact agreement
// for infinite blockade, O(N omega_r^2 / B) eigenvalue deviation for
// finite blockade.
ProjectionReport verify_projection(const ProductParams& params);

// Same comparison against a caller-supplied symmetric-basis reference
// matrix (lets a deliberately broken reference be detected).
ProjectionReport compare_projection(const ProductParams& params, const HMatrix& h_sym_reference);

// Number of atoms in a Rydberg level for a product state index.
int rydberg_count(std::size_t state, int n_atoms, int n_channels);

// max |[H, P_swap]| over all atom-pair swaps, relative to max |H|.
double max_swap_commutator(const ProductParams& params);

}  // namespace jcryd
