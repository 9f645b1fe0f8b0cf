#pragma once

#include <string>
#include <vector>

#include "qduet/hilbert.hpp"
#include "qduet/model.hpp"
#include "qduet/params.hpp"

namespace qduet {

// Numerically propagated amplitudes on a time grid.
struct Trajectory {
    Manifold manifold = Manifold::Single;
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<double> norms;  // 2-norm per grid point

    const Vector& at(std::size_t k) const { return states[k]; }
    StateVector state_at(std::size_t k) const {
        return StateVector{manifold, states[k]};
    }
};

// Uniform grid of `points` samples on [0, t_max].
std::vector<double> time_grid(double t_max, int points);

// states[k] = exp(-i M t_k) psi0. Hermitian M goes through a unitary
// eigendecomposition; otherwise each exponential is evaluated by
// scaling-and-squaring. Dimensions here never exceed 9, so both are exact
// to working precision.
Trajectory propagate(const Matrix& M, const StateVector& psi0,
                     const std::vector<double>& times);

// Single-excitation, atom-mediated collective amplitudes.
struct SingleACoords {
    Complex w, x, y, u;
};

// Textbook-style closed form for the (w,x) pair with Rabi frequency
// Omega = sqrt(2 g0^2 + Delta^2/4), evaluated exactly as printed in the
// source analysis. Exact at Delta = 0. At Delta != 0 the printed detuning
// factor disagrees with the propagator (wrong weight and sign symmetry);
// the propagator is authoritative there and the mismatch is exposed via
// closed_form_single_A_deviation.
SingleACoords closed_form_single_A(const SystemParams& params,
                                   const SingleACoords& init, double t);

// max-abs coordinate deviation of the closed form from the propagator over
// a time grid; a diagnostic, not an error.
double closed_form_single_A_deviation(const SystemParams& params,
                                      const SingleACoords& init,
                                      const std::vector<double>& times);

// Single-excitation, photon-mediated collective amplitudes (s,a,+,-).
struct SingleBCoords {
    Complex s, a, plus, minus;
};

// Decoupled-sector solution: (s,+) evolves with Omega_kappa =
// sqrt(2 g0^2 + (Delta-kappa)^2) and (a,-) with the (kappa -> -kappa,
// g0 -> w = 2 g_a g_b / g0) replacement. Exact when g_a = g_b; otherwise a
// secular approximation valid for kappa >> g0 (warns once below 5 g0).
SingleBCoords closed_form_single_B_secular(const SystemParams& params,
                                           const SingleBCoords& init, double t);

// Double-excitation, atom-mediated coordinates at g_a = g_b, Delta = 0.
struct DoubleACoords {
    Complex w, q, u, z, m, n, a1, a2;
};

// (w,q) rotate at 2g, (u,z) at 2*sqrt(3)*g, the remaining four amplitudes
// are constants of motion.
DoubleACoords closed_form_double_A(const SystemParams& params,
                                   const DoubleACoords& init, double t);

// Double-excitation, photon-mediated, Delta = 0 resonant sector.
struct DoubleBResonantCoords {
    Complex seven, beta, alpha, a;
};

// (seven, beta) rotate at Omega' = sqrt(2 g^2 + kappa^2); alpha and a are
// constants of motion.
DoubleBResonantCoords closed_form_double_B_resonant(
    const SystemParams& params, const DoubleBResonantCoords& init, double t);

// Double-excitation, photon-mediated, rotating-frame secular coordinates.
struct DoubleBSecularCoords {
    Complex eta, lambda, epsilon, theta;
};

// Rotating-frame amplitudes: the (eta,lambda) pair carries detuning
// Delta - kappa and the (epsilon,theta) pair Delta + kappa, each coupled at
// sqrt(2) g. At Delta = +/-kappa one pair rotates resonantly at sqrt(2) g.
// Magnitudes match the lab-frame amplitudes directly.
DoubleBSecularCoords closed_form_double_B_secular(
    const SystemParams& params, const DoubleBSecularCoords& init, double t);

struct TrappingVerdict {
    bool trapped = false;
    double eigenvalue = 0.0;  // real part of the Rayleigh quotient
    double residual = 0.0;    // ||M v - lambda v||_inf
};

// True iff v is an eigenvector of M with real eigenvalue to 1e-10, so its
// population is constant under evolution from any start.
TrappingVerdict is_population_trapping(const Matrix& M, const StateVector& v);

struct LeakageReport {
    double max_leakage = 0.0;  // max over grid, normalized by current norm
    std::string doublet;       // e.g. "w1/x1"
};

// Propagates psi0 under the lossy Hamiltonian and reports the worst
// population fraction found outside the two-state span psi0 belongs to.
// psi0 must lie (to 1e-9) in one of the recognized doublets.
LeakageReport lossy_two_state_check(CouplingConfig config,
                                    const SystemParams& params,
                                    const StateVector& psi0,
                                    const std::vector<double>& times);

}  // namespace qduet
