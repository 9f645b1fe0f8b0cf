#include "qduet/model.hpp"

#include <cmath>

namespace qduet {

namespace {

// index of `b` in `basis`, or -1 (states outside the manifold never arise
// here because every coupling conserves total excitation)
int find_index(const std::vector<BasisState>& basis, const BasisState& b) {
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (basis[k] == b) return static_cast<int>(k);
    return -1;
}

// Adds amp * |to><from| + h.c. for a raising-type transition.
void add_coupling(Matrix& M, const std::vector<BasisState>& basis, int from,
                  const BasisState& to, Complex amp) {
    const int i = find_index(basis, to);
    if (i < 0) return;
    M(i, from) += amp;
    M(from, i) += std::conj(amp);
}

}  // namespace

Matrix build_hamiltonian(CouplingConfig config, Manifold manifold,
                         const SystemParams& p, bool with_losses) {
    p.validate();
    const auto& basis = enumerate_basis(manifold);
    const int d = dimension(manifold);
    Matrix M = Matrix::Zero(d, d);

    const AtomLevel G = AtomLevel::Ground;
    const AtomLevel E = AtomLevel::Excited;

    for (int j = 0; j < d; ++j) {
        const BasisState& b = basis[j];

        // sigma_A^+ annihilating a photon of either mode
        if (b.atom_a == G && b.n_a > 0) {
            BasisState t = b; t.atom_a = E; --t.n_a;
            add_coupling(M, basis, j, t, p.g_a * std::sqrt(double(b.n_a)));
        }
        if (config == CouplingConfig::AtomMediated && b.atom_a == G && b.n_b > 0) {
            BasisState t = b; t.atom_a = E; --t.n_b;
            add_coupling(M, basis, j, t, p.g_b * std::sqrt(double(b.n_b)));
        }
        // sigma_B^+ carries the dipole phase in the atom-mediated layout
        if (config == CouplingConfig::AtomMediated) {
            if (b.atom_b == G && b.n_a > 0) {
                BasisState t = b; t.atom_b = E; --t.n_a;
                add_coupling(M, basis, j, t,
                             p.epsilon * p.g_a * std::sqrt(double(b.n_a)));
            }
            if (b.atom_b == G && b.n_b > 0) {
                BasisState t = b; t.atom_b = E; --t.n_b;
                add_coupling(M, basis, j, t,
                             p.epsilon * p.g_b * std::sqrt(double(b.n_b)));
            }
        } else {
            if (b.atom_b == G && b.n_b > 0) {
                BasisState t = b; t.atom_b = E; --t.n_b;
                add_coupling(M, basis, j, t, p.g_b * std::sqrt(double(b.n_b)));
            }
            // photon hopping a b^dagger (h.c. added by add_coupling)
            if (b.n_a > 0 && b.n_b < 2) {
                BasisState t = b; --t.n_a; ++t.n_b;
                add_coupling(M, basis, j, t,
                             p.kappa * std::sqrt(double(b.n_a) * (b.n_b + 1)));
            }
        }
    }

    const double shift = (manifold == Manifold::Vacuum) ? 0.0 : p.delta;
    for (int j = 0; j < d; ++j) {
        M(j, j) += p.delta * basis[j].atoms_excited() - shift;
        if (with_losses)
            M(j, j) += Complex(0.0, -0.5) * (p.Gamma * basis[j].atoms_excited() +
                                             p.gamma * basis[j].photons());
    }
    return M;
}

CollectiveFrameResult collective_frame(CouplingConfig config,
                                       const SystemParams& p) {
    p.validate();
    if (p.g0() <= 0.0)
        throw RegimeError("collective_frame requires g0 > 0");

    const Matrix M = build_hamiltonian(config, Manifold::Single, p, false);
    const Frame frame =
        config == CouplingConfig::AtomMediated ? Frame::SingleA : Frame::SingleB;
    const Matrix V = frame_states(frame, Manifold::Single, p);

    CollectiveFrameResult out;
    out.transformed = V.adjoint() * M * V;
    out.labels = frame_labels(frame, Manifold::Single);

    const double scale = std::max(1.0, out.transformed.cwiseAbs().maxCoeff());
    if (config == CouplingConfig::AtomMediated) {
        // u decouples entirely; y keeps only its own phase
        double resid = 0.0;
        for (int k = 0; k < 4; ++k) {
            if (k != 1) resid = std::max(resid, std::abs(out.transformed(1, k)));
            if (k != 3) resid = std::max(resid, std::abs(out.transformed(3, k)));
        }
        resid = std::max(resid, std::abs(out.transformed(1, 1)));  // u has no phase
        if (resid > 1e-12 * scale)
            throw std::logic_error("atom-mediated collective frame failed to decouple");
        out.cross_coupling = 0.0;
        out.decoupled = true;
    } else {
        out.cross_coupling = (p.g_a * p.g_a - p.g_b * p.g_b) / p.g0();
        out.decoupled = std::abs(out.cross_coupling) <= 1e-12 * std::max(1.0, p.g0());
        // the residual weight sits on the (a,+) link as u/sqrt(2)
        const double want = out.cross_coupling / std::sqrt(2.0);
        if (std::abs(out.transformed(1, 2).real() - want) > 1e-12 * scale)
            throw std::logic_error("photon-mediated cross coupling inconsistent");
    }
    return out;
}

}  // namespace qduet
