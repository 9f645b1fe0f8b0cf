#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qduet/params.hpp"

namespace qduet {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class AtomLevel : int { Ground = 0, Excited = 1 };

// One product eigenstate of the free Hamiltonian: two two-level atoms and
// two cavity modes truncated at two photons.
struct BasisState {
    AtomLevel atom_a = AtomLevel::Ground;
    AtomLevel atom_b = AtomLevel::Ground;
    int n_a = 0;
    int n_b = 0;

    int atoms_excited() const noexcept {
        return static_cast<int>(atom_a) + static_cast<int>(atom_b);
    }
    int photons() const noexcept { return n_a + n_b; }
    int excitation() const noexcept { return atoms_excited() + photons(); }

    // e.g. "eg10" for |e_A, g_B, 1_a, 0_b>
    std::string label() const;

    bool operator==(const BasisState&) const = default;
};

// Fixed excitation sectors. Augmented is the two-excitation basis with the
// zero-excitation state appended last, which carries the two-photon
// coherence needed for the pair concurrence.
enum class Manifold { Vacuum, Single, Double, Augmented };

int dimension(Manifold m);
std::string to_string(Manifold m);

// Canonical basis of a manifold, in frozen index order.
const std::vector<BasisState>& enumerate_basis(Manifold m);

// Complex amplitudes over the canonical basis of one manifold.
struct StateVector {
    Manifold manifold = Manifold::Single;
    Vector amplitudes;

    double squared_norm() const { return amplitudes.squaredNorm(); }
    double norm() const { return amplitudes.norm(); }
    int dim() const { return static_cast<int>(amplitudes.size()); }
};

// Validates dimension and squared norm in (0, 1 + 1e-12].
StateVector make_state(Manifold m, Vector amplitudes);

// Named initial and superposition states used throughout. Coupling-weighted
// names (x1, y1) require g0 > 0; beta requires g_a = g_b.
StateVector named_state(std::string_view name, const SystemParams& params);

std::vector<std::string> named_state_names();

// Reduced density matrix with its declared bipartition, atoms (2x2) or
// modes (3x3); modes ordered 00,01,02,10,11,12,20,21,22.
struct DensityMatrix {
    std::array<int, 2> dims{2, 2};
    Matrix rho;

    int dim() const { return dims[0] * dims[1]; }
    // throws std::invalid_argument if not Hermitian/PSD/normalized to tolerance
    void validate() const;
};

enum class Subsystem { Atoms, Modes };

DensityMatrix partial_trace(const StateVector& psi, Subsystem keep);

// Orthonormal coordinate frames that split the dynamics. Each frame is a
// complete unitary basis of its manifold; on the augmented manifold the
// vacuum coordinate is appended last.
enum class Frame { SingleA, SingleB, DoubleA, DoubleB };

// Columns are the frame states in the canonical basis of `manifold`.
Matrix frame_states(Frame frame, Manifold manifold, const SystemParams& params);
std::vector<std::string> frame_labels(Frame frame, Manifold manifold);
Manifold frame_base_manifold(Frame frame);

// coords = V^dagger psi with V = frame_states(...). Unitary, so the
// coordinate norm equals the state norm.
Vector superposition_coords(const StateVector& psi, Frame frame,
                            const SystemParams& params);

// Inverse transform: psi = V coords.
StateVector state_from_coords(Frame frame, Manifold manifold,
                              const SystemParams& params, const Vector& coords);

}  // namespace qduet
