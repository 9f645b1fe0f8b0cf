#pragma once

#include "qduet/dynamics.hpp"
#include "qduet/hilbert.hpp"
#include "qduet/params.hpp"

namespace qduet {

enum class MeasureMethod { Wootters, XState, Negativity, Analytic };

struct MeasureResult {
    double value = 0.0;
    MeasureMethod method = MeasureMethod::Wootters;
};

// Spin-flip concurrence of a two-qubit density matrix: the eigenvalues of
// rho * (sy x sy) rho^* (sy x sy) are clamped at zero before the square
// roots, and the result is clamped into [0, 1].
MeasureResult wootters_concurrence(const DensityMatrix& rho);

enum class XStateVariant {
    Shared,  // coherence between |eg> and |ge>:  2(|rho23| - sqrt(rho11 rho44))
    Pair,    // coherence between |ee> and |gg>:  2(|rho14| - sqrt(rho22 rho33))
};

// Closed form on the X-shaped sector the variant addresses; agrees with
// wootters_concurrence whenever the other coherence vanishes.
MeasureResult xstate_concurrence(const DensityMatrix& rho, XStateVariant variant);

// log2 || rho^{T_B} ||_1 via a partial-transpose eigensolve: exact for the
// 2x2 atomic split and the 3x3 mode split alike.
MeasureResult log_negativity(const DensityMatrix& rho);

// Two-qubit X-state negativity from the closed-form 2x2 block eigenvalues
// of the partial transpose (no eigensolve); cross-validates log_negativity.
double xstate_log_negativity(const DensityMatrix& rho);

struct ConcurrencePair {
    double atoms = 0.0;
    double modes = 0.0;
};

// Single-excitation atom-mediated concurrences from collective amplitudes
// taken at one instant (u and |y| are constants of motion):
//   C_AB = |(|W|^2 - |U|^2) + 2i Im(U W^*)|
//   C_ab = 2 |g_a g_b (|X|^2 - |Y|^2) + g_a^2 X Y^* - g_b^2 X^* Y| / g0^2
// Equal to the reduced-density measures for any lossless trajectory.
ConcurrencePair analytic_concurrences_single_A(const SystemParams& params,
                                               const SingleACoords& coords);

// Photon-mediated counterpart on the decoupled sectors:
//   C_AB = (2 g_a g_b / g0^2) | |C_+|^2 - |C_-|^2 |,  C_ab = | |C_s|^2 - |C_a|^2 |
// Exact whenever only one sector is populated (in particular g_a = g_b with
// a symmetric start); otherwise a secular-regime approximation.
ConcurrencePair analytic_concurrences_single_B(const SystemParams& params,
                                               const SingleBCoords& coords);

}  // namespace qduet
