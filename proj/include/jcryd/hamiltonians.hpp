#pragma once

// Hamiltonian builders on the symmetric blockaded basis, plus the
// truncated cavity-style ladder model that shares its spectrum.

#include "jcryd/linalg.hpp"
#include "jcryd/symbasis.hpp"

namespace jcryd {

enum class BasisTag { Symmetric, Product, CavityJC };
enum class FrameTag { LaserFrame, DoublyRotating };

struct HMatrix {
    CMatrix m;
    BasisTag basis = BasisTag::Symmetric;
    FrameTag frame = FrameTag::LaserFrame;

    std::size_t dim() const { return m.rows(); }
};

struct DriveParams {
    double omega_uw = 0.0;  // microwave (Raman) Rabi frequency, angular
    double delta_uw = 0.0;  // microwave detuning relative to omega_hf, angular
};

// Undriven symmetric Hamiltonian, energies relative to flips * omega_hf:
//   <g,n|H|g,n> = 0
//   <e_k,n-1|H|e_k,n-1> = -(delta_r + offset_k)
//   <e_k,n-1|H|g,n> = sqrt(n) * rabi_scale_k * omega_r / 2
HMatrix build_symmetric(const ModelParams& params);

// Adds the global |0><->|1> probe in the frame rotating at the microwave
// frequency for every flip: diagonal -flips * delta_uw, ladder couplings
// sqrt((n+1)(N-n)) * omega_uw / 2 inside the ground block and
// sqrt((m+1)(N-1-m)) * omega_uw / 2 inside each excited block.
HMatrix build_driven(const ModelParams& params, const DriveParams& drive);

// Single-mode ladder Hamiltonian
//   omega_c a^dag a + omega_eg sigma+ sigma- + g (a^dag sigma- + a sigma+)
// with omega_c = omega_hf, omega_eg = omega_hf - delta_r, g = omega_r / 2,
// truncated to at most `truncation` total excitations and laid out
// index-compatibly with the symmetric basis (boson block, then qubit-
// excited block). Absolute energies. Requires K = 1 and truncation = N.
HMatrix build_cavity_jc(const ModelParams& params, int truncation);

// Adds flips * omega_hf back onto the diagonal of a symmetric-basis matrix.
HMatrix restore_hyperfine_ladder(const HMatrix& h, const ModelParams& params);

// True iff max |H - H^dag| <= 1e-12 * max |H| entrywise.
bool is_hermitian(const HMatrix& h);

}  // namespace jcryd
