#include "qduet/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace qduet {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

const AtomLevel G = AtomLevel::Ground;
const AtomLevel E = AtomLevel::Excited;

std::vector<BasisState> build_basis(Manifold m) {
    // Index order is frozen; golden tests depend on it.
    const std::vector<BasisState> single = {
        {E, G, 0, 0}, {G, E, 0, 0}, {G, G, 1, 0}, {G, G, 0, 1}};
    const std::vector<BasisState> dbl = {
        {E, E, 0, 0}, {E, G, 0, 1}, {G, E, 1, 0}, {G, G, 1, 1},
        {E, G, 1, 0}, {G, G, 2, 0}, {G, E, 0, 1}, {G, G, 0, 2}};
    switch (m) {
        case Manifold::Vacuum:
            return {{G, G, 0, 0}};
        case Manifold::Single:
            return single;
        case Manifold::Double:
            return dbl;
        case Manifold::Augmented: {
            auto b = dbl;
            b.push_back({G, G, 0, 0});
            return b;
        }
    }
    throw std::invalid_argument("unsupported manifold");
}

}  // namespace

void SystemParams::validate() const {
    auto bad = [](double x) { return !std::isfinite(x); };
    if (bad(g_a) || bad(g_b) || bad(delta) || bad(kappa) || bad(Gamma) ||
        bad(gamma) || !std::isfinite(std::abs(epsilon)))
        throw std::invalid_argument("SystemParams: non-finite entry");
    if (g_a < 0 || g_b < 0)
        throw std::invalid_argument("SystemParams: couplings must be >= 0");
    if (Gamma < 0 || gamma < 0)
        throw std::invalid_argument("SystemParams: decay rates must be >= 0");
    if (std::abs(std::abs(epsilon) - 1.0) > 1e-12)
        throw std::invalid_argument("SystemParams: |epsilon| must be 1");
}

std::string to_string(CouplingConfig config) {
    return config == CouplingConfig::AtomMediated ? "A" : "B";
}

std::string BasisState::label() const {
    std::string s;
    s += (atom_a == E) ? 'e' : 'g';
    s += (atom_b == E) ? 'e' : 'g';
    s += static_cast<char>('0' + n_a);
    s += static_cast<char>('0' + n_b);
    return s;
}

int dimension(Manifold m) {
    switch (m) {
        case Manifold::Vacuum: return 1;
        case Manifold::Single: return 4;
        case Manifold::Double: return 8;
        case Manifold::Augmented: return 9;
    }
    throw std::invalid_argument("unsupported manifold");
}

std::string to_string(Manifold m) {
    switch (m) {
        case Manifold::Vacuum: return "vacuum";
        case Manifold::Single: return "single";
        case Manifold::Double: return "double";
        case Manifold::Augmented: return "augmented";
    }
    return "?";
}

const std::vector<BasisState>& enumerate_basis(Manifold m) {
    static const std::vector<BasisState> vac = build_basis(Manifold::Vacuum);
    static const std::vector<BasisState> one = build_basis(Manifold::Single);
    static const std::vector<BasisState> two = build_basis(Manifold::Double);
    static const std::vector<BasisState> aug = build_basis(Manifold::Augmented);
    switch (m) {
        case Manifold::Vacuum: return vac;
        case Manifold::Single: return one;
        case Manifold::Double: return two;
        case Manifold::Augmented: return aug;
    }
    throw std::invalid_argument("unsupported manifold");
}

StateVector make_state(Manifold m, Vector amplitudes) {
    if (amplitudes.size() != dimension(m))
        throw std::invalid_argument("state dimension does not match manifold");
    const double n2 = amplitudes.squaredNorm();
    if (!std::isfinite(n2) || n2 <= 0.0 || n2 > 1.0 + 1e-12)
        throw std::invalid_argument("state squared norm must lie in (0, 1]");
    return StateVector{m, std::move(amplitudes)};
}

namespace {

StateVector from_entries(Manifold m,
                         std::initializer_list<std::pair<int, Complex>> entries) {
    Vector v = Vector::Zero(dimension(m));
    for (const auto& [idx, amp] : entries) v(idx) = amp;
    return make_state(m, std::move(v));
}

}  // namespace

StateVector named_state(std::string_view name, const SystemParams& params) {
    params.validate();
    const Complex eps = params.epsilon;
    const double g_a = params.g_a;
    const double g_b = params.g_b;
    const double g0 = params.g0();
    const double r2 = 1.0 / kSqrt2;
    const double r3 = 1.0 / std::sqrt(3.0);
    const double r6 = 1.0 / std::sqrt(6.0);

    // single excitation
    if (name == "w1") return from_entries(Manifold::Single, {{0, r2}, {1, eps * r2}});
    if (name == "u1") return from_entries(Manifold::Single, {{0, r2}, {1, -eps * r2}});
    if (name == "bell_atoms")
        return from_entries(Manifold::Single, {{0, r2}, {1, r2}});
    if (name == "noon1") return from_entries(Manifold::Single, {{2, r2}, {3, r2}});
    if (name == "x1" || name == "y1") {
        if (g0 <= 0.0)
            throw RegimeError("coupling-weighted state requires g_a^2 + g_b^2 > 0");
        if (name == "x1")
            return from_entries(Manifold::Single, {{2, g_a / g0}, {3, g_b / g0}});
        return from_entries(Manifold::Single, {{2, -g_b / g0}, {3, g_a / g0}});
    }

    // double excitation, atom-mediated families (dipole phase folded in)
    if (name == "s1") return from_entries(Manifold::Double, {{0, eps * r2}, {3, r2}});
    if (name == "s2") return from_entries(Manifold::Double, {{1, r2}, {2, eps * r2}});
    if (name == "a1_jc" || name == "n")
        return from_entries(Manifold::Double, {{0, eps * r2}, {3, -r2}});
    if (name == "a2_jc")
        return from_entries(Manifold::Double, {{1, r2}, {2, -eps * r2}});
    if (name == "a1") return from_entries(Manifold::Double, {{2, eps * r2}, {4, -r2}});
    if (name == "a2") return from_entries(Manifold::Double, {{1, r2}, {6, -eps * r2}});
    if (name == "m")
        return from_entries(Manifold::Double,
                            {{0, -eps * r6}, {3, -r6}, {5, r3}, {7, r3}});
    if (name == "w")
        return from_entries(Manifold::Double,
                            {{1, -0.5}, {2, 0.5 * eps}, {4, 0.5}, {6, -0.5 * eps}});
    if (name == "q")
        return from_entries(Manifold::Double, {{5, r2}, {7, -r2}});
    if (name == "u")
        return from_entries(Manifold::Double,
                            {{1, 0.5}, {2, 0.5 * eps}, {4, 0.5}, {6, 0.5 * eps}});
    if (name == "z")
        return from_entries(Manifold::Double,
                            {{0, eps * r3}, {3, r3}, {5, r6}, {7, r6}});

    // double excitation, photon-mediated families
    if (name == "seven_tilde")
        return from_entries(Manifold::Double, {{4, r2}, {6, -r2}});
    if (name == "beta") {
        if (!params.equal_couplings())
            throw RegimeError("beta requires g_a = g_b");
        const double g = g_a;
        const double omp = std::sqrt(2.0 * g * g + params.kappa * params.kappa);
        if (omp <= 0.0)
            throw RegimeError("beta requires g or kappa nonzero");
        const double k = params.kappa;
        return from_entries(Manifold::Double, {{1, k / (kSqrt2 * omp)},
                                               {2, -k / (kSqrt2 * omp)},
                                               {5, g / omp},
                                               {7, -g / omp}});
    }
    if (name == "eta")
        return from_entries(Manifold::Double, {{3, r2}, {5, 0.5}, {7, 0.5}});
    if (name == "epsilon")
        return from_entries(Manifold::Double, {{3, r2}, {5, -0.5}, {7, -0.5}});
    if (name == "lambda")
        return from_entries(Manifold::Double,
                            {{1, 0.5}, {2, 0.5}, {4, 0.5}, {6, 0.5}});
    if (name == "theta")
        return from_entries(Manifold::Double,
                            {{1, 0.5}, {2, 0.5}, {4, -0.5}, {6, -0.5}});

    if (name == "noon2_sym")
        return from_entries(Manifold::Double, {{5, r2}, {7, r2}});
    if (name == "noon2_asym")
        return from_entries(Manifold::Double, {{5, r2}, {7, -r2}});
    if (name == "two_photon_pair")
        return from_entries(Manifold::Augmented, {{3, r2}, {8, r2}});

    throw std::invalid_argument("unknown state name: " + std::string(name));
}

std::vector<std::string> named_state_names() {
    return {"w1",     "u1",    "x1",          "y1",    "bell_atoms",
            "noon1",  "s1",    "s2",          "a1_jc", "a2_jc",
            "a1",     "a2",    "m",           "n",     "w",
            "q",      "u",     "z",           "beta",  "seven_tilde",
            "eta",    "lambda","epsilon",     "theta", "two_photon_pair",
            "noon2_sym", "noon2_asym"};
}

void DensityMatrix::validate() const {
    if (rho.rows() != rho.cols() || rho.rows() != dim())
        throw std::invalid_argument("density matrix shape/dims mismatch");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("density matrix not Hermitian");
    const double tr = rho.trace().real();
    if (tr <= 0.0 || tr > 1.0 + 1e-12)
        throw std::invalid_argument("density matrix trace outside (0, 1]");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

DensityMatrix partial_trace(const StateVector& psi, Subsystem keep) {
    const auto& basis = enumerate_basis(psi.manifold);
    const int d = psi.dim();
    // atom pair index in {ee, eg, ge, gg}; mode pair index 3*n_a + n_b
    auto atom_index = [](const BasisState& b) {
        return (b.atom_a == E ? 0 : 2) + (b.atom_b == E ? 0 : 1);
    };
    auto mode_index = [](const BasisState& b) { return 3 * b.n_a + b.n_b; };

    DensityMatrix out;
    if (keep == Subsystem::Atoms) {
        out.dims = {2, 2};
        out.rho = Matrix::Zero(4, 4);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (mode_index(basis[i]) == mode_index(basis[j]))
                    out.rho(atom_index(basis[i]), atom_index(basis[j])) +=
                        psi.amplitudes(i) * std::conj(psi.amplitudes(j));
    } else {
        out.dims = {3, 3};
        out.rho = Matrix::Zero(9, 9);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (atom_index(basis[i]) == atom_index(basis[j]))
                    out.rho(mode_index(basis[i]), mode_index(basis[j])) +=
                        psi.amplitudes(i) * std::conj(psi.amplitudes(j));
    }
    return out;
}

Manifold frame_base_manifold(Frame frame) {
    switch (frame) {
        case Frame::SingleA:
        case Frame::SingleB: return Manifold::Single;
        case Frame::DoubleA:
        case Frame::DoubleB: return Manifold::Double;
    }
    throw std::invalid_argument("unsupported frame");
}

std::vector<std::string> frame_labels(Frame frame, Manifold manifold) {
    std::vector<std::string> labels;
    switch (frame) {
        case Frame::SingleA: labels = {"w1", "u1", "x1", "y1"}; break;
        case Frame::SingleB: labels = {"s", "a", "plus", "minus"}; break;
        case Frame::DoubleA:
            labels = {"w", "q", "u", "z", "m", "n", "a1", "a2"};
            break;
        case Frame::DoubleB:
            labels = {"eta", "epsilon", "lambda", "theta",
                      "ee",  "seven_tilde", "beta", "alpha"};
            break;
    }
    if (manifold == Manifold::Augmented) labels.push_back("vac");
    return labels;
}

Matrix frame_states(Frame frame, Manifold manifold, const SystemParams& params) {
    params.validate();
    const Manifold base = frame_base_manifold(frame);
    if (manifold != base &&
        !(base == Manifold::Double && manifold == Manifold::Augmented))
        throw std::invalid_argument("frame/manifold mismatch");

    const int d = dimension(manifold);
    auto embed = [&](const StateVector& s, int col, Matrix& V) {
        V.block(0, col, s.dim(), 1) = s.amplitudes;
    };

    Matrix V = Matrix::Zero(d, d);
    switch (frame) {
        case Frame::SingleA: {
            if (params.g0() <= 0.0)
                throw RegimeError("SingleA frame requires g0 > 0");
            const char* names[] = {"w1", "u1", "x1", "y1"};
            for (int k = 0; k < 4; ++k)
                embed(named_state(names[k], params), k, V);
            break;
        }
        case Frame::SingleB: {
            if (params.g0() <= 0.0)
                throw RegimeError("SingleB frame requires g0 > 0");
            const double r2 = 1.0 / kSqrt2;
            V(2, 0) = r2; V(3, 0) = r2;     // s
            V(2, 1) = r2; V(3, 1) = -r2;    // a
            V(0, 2) = params.g_a / params.g0();
            V(1, 2) = params.g_b / params.g0();  // plus
            V(0, 3) = params.g_b / params.g0();
            V(1, 3) = -params.g_a / params.g0();  // minus
            break;
        }
        case Frame::DoubleA: {
            const char* names[] = {"w", "q", "u", "z", "m", "n", "a1", "a2"};
            for (int k = 0; k < 8; ++k)
                embed(named_state(names[k], params), k, V);
            break;
        }
        case Frame::DoubleB: {
            if (!params.equal_couplings())
                throw RegimeError("DoubleB frame requires g_a = g_b");
            const double g = params.g_a;
            const double kap = params.kappa;
            const double omp = std::sqrt(2.0 * g * g + kap * kap);
            if (omp <= 0.0)
                throw RegimeError("DoubleB frame requires g or kappa nonzero");
            const char* names[] = {"eta", "epsilon", "lambda", "theta"};
            for (int k = 0; k < 4; ++k)
                embed(named_state(names[k], params), k, V);
            V(0, 4) = 1.0;  // ee00
            embed(named_state("seven_tilde", params), 5, V);
            embed(named_state("beta", params), 6, V);
            // alpha: orthogonal partner of beta inside the odd sector
            const double r2 = 1.0 / kSqrt2;
            V(1, 7) = g / omp;
            V(2, 7) = -g / omp;
            V(5, 7) = -kap * r2 / omp;
            V(7, 7) = kap * r2 / omp;
            break;
        }
    }
    if (manifold == Manifold::Augmented) V(8, 8) = 1.0;
    return V;
}

Vector superposition_coords(const StateVector& psi, Frame frame,
                            const SystemParams& params) {
    const Matrix V = frame_states(frame, psi.manifold, params);
    return V.adjoint() * psi.amplitudes;
}

StateVector state_from_coords(Frame frame, Manifold manifold,
                              const SystemParams& params, const Vector& coords) {
    const Matrix V = frame_states(frame, manifold, params);
    if (coords.size() != V.cols())
        throw std::invalid_argument("coordinate dimension mismatch");
    return make_state(manifold, V * coords);
}

}  // namespace qduet
