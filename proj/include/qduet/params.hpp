#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qduet {

using Complex = std::complex<double>;

// Which pair of qubits mediates the coupling between the other two.
enum class CouplingConfig {
    AtomMediated,    // both atoms couple to both cavity modes
    PhotonMediated,  // one atom per cavity, cavities coupled at rate kappa
};

std::string to_string(CouplingConfig config);

// Thrown when a computation is requested outside the parameter regime in
// which it is defined (as opposed to malformed input, which throws
// std::invalid_argument).
class RegimeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Physical rates in units of a reference coupling g (time unit 1/g).
// epsilon is the relative dipole phase exp(i k R_AB), kept as a unit
// complex number; it enters only the atom-mediated configuration.
// kappa enters only the photon-mediated configuration.
struct SystemParams {
    double g_a = 1.0;
    double g_b = 1.0;
    double delta = 0.0;        // atom-cavity detuning
    double kappa = 0.0;        // inter-cavity mode coupling
    Complex epsilon{1.0, 0.0}; // unit-modulus dipole phase
    double Gamma = 0.0;        // atomic spontaneous emission rate
    double gamma = 0.0;        // cavity leakage rate

    // root-sum-square coupling, derived on demand
    double g0() const noexcept { return std::hypot(g_a, g_b); }

    bool equal_couplings(double tol = 1e-12) const noexcept {
        return std::abs(g_a - g_b) <= tol * std::max(1.0, g0());
    }

    // throws std::invalid_argument on any violated sign/modulus constraint
    void validate() const;
};

}  // namespace qduet
