#pragma once

#include <string>
#include <vector>

#include "qduet/hilbert.hpp"
#include "qduet/params.hpp"

namespace qduet {

// Interaction-frame Hamiltonian matrix M of a manifold, such that
// i d/dt c = M c for the amplitude vector c over the canonical basis.
//
// Diagonal convention: the entry of basis state j is
// Delta * (excited atoms of j) minus one manifold-global shift of Delta
// (zero for the vacuum manifold), which reproduces the standard
// interaction-frame amplitude equations for both configurations:
// diag(0,0,-Delta,-Delta) at n=1 and (Delta,0,0,-Delta,0,-Delta,0,-Delta)
// at n=2, with -Delta on the appended vacuum state. Global shifts within a
// manifold are observationally irrelevant (tested).
//
// With losses the anti-Hermitian diagonal -i(Gamma/2) * excited_atoms
// -i(gamma/2) * photons is added; otherwise M is Hermitian.
Matrix build_hamiltonian(CouplingConfig config, Manifold manifold,
                         const SystemParams& params, bool with_losses = false);

struct CollectiveFrameResult {
    Matrix transformed;                 // frame Hamiltonian V^dagger M V
    std::vector<std::string> labels;    // coordinate names, column order
    double cross_coupling = 0.0;        // residual weight linking the sectors
    bool decoupled = false;             // sectors evolve independently
};

// Single-excitation Hamiltonian rewritten in the collective basis.
// Atom-mediated: (w,u,x,y); the u row vanishes and y keeps only its phase.
// Photon-mediated: (s,a,+,-) with mode energies split by 2*kappa and
// residual cross coupling u = (g_a^2 - g_b^2)/g0.
CollectiveFrameResult collective_frame(CouplingConfig config,
                                       const SystemParams& params);

}  // namespace qduet
