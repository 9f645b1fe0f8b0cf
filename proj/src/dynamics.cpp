#include "qduet/dynamics.hpp"

#include <array>
#include <cmath>
#include <iostream>
#include <mutex>

#include <unsupported/Eigen/MatrixFunctions>

namespace qduet {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
const Complex kImag{0.0, 1.0};

bool is_hermitian(const Matrix& M) {
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    return (M - M.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale;
}

// exp(-i t [[0, s],[s, d]]) as row-major entries {m00, m01, m10, m11}
std::array<Complex, 4> two_level_propagator(double s, double d, double t) {
    const double om = std::sqrt(s * s + 0.25 * d * d);
    const Complex phase = std::exp(-kImag * (0.5 * d * t));
    if (om <= 0.0) return {phase, 0.0, 0.0, phase};
    const double c = std::cos(om * t);
    const double sn = std::sin(om * t) / om;
    // traceless part [[-d/2, s],[s, d/2]]
    return {phase * (c + kImag * (0.5 * d) * sn), phase * (-kImag * s * sn),
            phase * (-kImag * s * sn), phase * (c - kImag * (0.5 * d) * sn)};
}

void warn_once(std::once_flag& flag, const std::string& msg) {
    std::call_once(flag, [&] { std::cerr << "warning: " << msg << "\n"; });
}

std::once_flag g_secular_b1_warn;
std::once_flag g_secular_b2_warn;

}  // namespace

std::vector<double> time_grid(double t_max, int points) {
    if (!(t_max > 0.0) || points < 2)
        throw std::invalid_argument("time_grid requires t_max > 0, points >= 2");
    std::vector<double> t(points);
    for (int k = 0; k < points; ++k)
        t[k] = t_max * double(k) / double(points - 1);
    return t;
}

Trajectory propagate(const Matrix& M, const StateVector& psi0,
                     const std::vector<double>& times) {
    if (M.rows() != M.cols() || M.rows() != psi0.dim())
        throw std::invalid_argument("propagate: dimension mismatch");
    if (!M.allFinite() || !psi0.amplitudes.allFinite())
        throw std::invalid_argument("propagate: non-finite entries");
    if (times.empty() || times.front() < 0.0)
        throw std::invalid_argument("propagate: times must start at t >= 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw std::invalid_argument("propagate: times must be ascending");

    Trajectory traj;
    traj.manifold = psi0.manifold;
    traj.times = times;
    traj.states.reserve(times.size());
    traj.norms.reserve(times.size());

    if (is_hermitian(M)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(M);
        const Vector c0 = es.eigenvectors().adjoint() * psi0.amplitudes;
        for (double t : times) {
            Vector phased = c0;
            for (int j = 0; j < phased.size(); ++j)
                phased(j) *= std::exp(-kImag * (es.eigenvalues()(j) * t));
            traj.states.push_back(es.eigenvectors() * phased);
            traj.norms.push_back(traj.states.back().norm());
        }
    } else {
        for (double t : times) {
            const Matrix U = (Matrix(-kImag * M * t)).exp();
            traj.states.push_back(U * psi0.amplitudes);
            traj.norms.push_back(traj.states.back().norm());
        }
    }
    return traj;
}

SingleACoords closed_form_single_A(const SystemParams& p,
                                   const SingleACoords& c0, double t) {
    p.validate();
    const double g0 = p.g0();
    const double om = std::sqrt(2.0 * g0 * g0 + 0.25 * p.delta * p.delta);
    SingleACoords c;
    if (om <= 0.0) {
        c = c0;
    } else {
        const Complex ph = std::exp(kImag * (0.5 * p.delta * t));
        const Complex rot =
            std::cos(om * t) + kImag * (p.delta / om) * std::sin(om * t);
        const Complex xfer = kImag * (kSqrt2 * g0 / om) * std::sin(om * t);
        c.w = ph * (c0.w * rot - c0.x * xfer);
        c.x = ph * (c0.x * rot - c0.w * xfer);
    }
    c.y = c0.y * std::exp(kImag * (p.delta * t));
    c.u = c0.u;
    return c;
}

double closed_form_single_A_deviation(const SystemParams& p,
                                      const SingleACoords& init,
                                      const std::vector<double>& times) {
    Vector coords0(4);
    coords0 << init.w, init.u, init.x, init.y;  // frame order (w,u,x,y)
    const StateVector psi0 =
        state_from_coords(Frame::SingleA, Manifold::Single, p, coords0);
    const Matrix M =
        build_hamiltonian(CouplingConfig::AtomMediated, Manifold::Single, p, false);
    const Trajectory traj = propagate(M, psi0, times);
    const Matrix V = frame_states(Frame::SingleA, Manifold::Single, p);

    double dev = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const Vector exact = V.adjoint() * traj.states[k];
        const SingleACoords c = closed_form_single_A(p, init, times[k]);
        dev = std::max({dev, std::abs(c.w - exact(0)), std::abs(c.u - exact(1)),
                        std::abs(c.x - exact(2)), std::abs(c.y - exact(3))});
    }
    return dev;
}

SingleBCoords closed_form_single_B_secular(const SystemParams& p,
                                           const SingleBCoords& c0, double t) {
    p.validate();
    const double g0 = p.g0();
    if (g0 <= 0.0)
        throw std::invalid_argument("closed_form_single_B_secular requires g0 > 0");
    if (p.kappa < 5.0 * g0)
        warn_once(g_secular_b1_warn,
                  "single-excitation secular form used below kappa = 5 g0");

    const double w = 2.0 * p.g_a * p.g_b / g0;
    // pair solution for i s' = -(delta-kappa) s + (g/sqrt2) c ; i c' = (g/sqrt2) s
    auto pair = [&](Complex s0, Complex cp0, double coupling, double kap) {
        const double dk = p.delta - kap;
        const double omk = std::sqrt(2.0 * coupling * coupling + dk * dk);
        if (omk <= 0.0) return std::array<Complex, 2>{s0, cp0};
        const Complex ph = std::exp(kImag * (0.5 * dk * t));
        const double cs = std::cos(0.5 * omk * t);
        const double sn = std::sin(0.5 * omk * t);
        const Complex s_t =
            ph * (s0 * cs + kImag * ((dk * s0 - kSqrt2 * coupling * cp0) / omk) * sn);
        const Complex c_t =
            ph * (cp0 * cs - kImag * ((dk * cp0 + kSqrt2 * coupling * s0) / omk) * sn);
        return std::array<Complex, 2>{s_t, c_t};
    };

    const auto sym = pair(c0.s, c0.plus, g0, p.kappa);
    const auto asym = pair(c0.a, c0.minus, w, -p.kappa);
    return SingleBCoords{sym[0], asym[0], sym[1], asym[1]};
}

DoubleACoords closed_form_double_A(const SystemParams& p,
                                   const DoubleACoords& c0, double t) {
    p.validate();
    if (!p.equal_couplings())
        throw std::invalid_argument("closed_form_double_A requires g_a = g_b");
    if (p.delta != 0.0)
        throw std::invalid_argument("closed_form_double_A requires delta = 0");
    const double g = p.g_a;

    DoubleACoords c = c0;  // m, n, a1, a2 are constants of motion
    const auto wq = two_level_propagator(2.0 * g, 0.0, t);
    c.w = wq[0] * c0.w + wq[1] * c0.q;
    c.q = wq[2] * c0.w + wq[3] * c0.q;
    const auto uz = two_level_propagator(2.0 * std::sqrt(3.0) * g, 0.0, t);
    c.u = uz[0] * c0.u + uz[1] * c0.z;
    c.z = uz[2] * c0.u + uz[3] * c0.z;
    return c;
}

DoubleBResonantCoords closed_form_double_B_resonant(
    const SystemParams& p, const DoubleBResonantCoords& c0, double t) {
    p.validate();
    if (p.delta != 0.0)
        throw std::invalid_argument("closed_form_double_B_resonant requires delta = 0");
    if (!p.equal_couplings())
        throw std::invalid_argument("closed_form_double_B_resonant requires g_a = g_b");
    const double g = p.g_a;
    const double omp = std::sqrt(2.0 * g * g + p.kappa * p.kappa);

    DoubleBResonantCoords c = c0;  // alpha and a are constants of motion
    const auto sb = two_level_propagator(omp, 0.0, t);
    c.seven = sb[0] * c0.seven + sb[1] * c0.beta;
    c.beta = sb[2] * c0.seven + sb[3] * c0.beta;
    return c;
}

DoubleBSecularCoords closed_form_double_B_secular(
    const SystemParams& p, const DoubleBSecularCoords& c0, double t) {
    p.validate();
    if (!p.equal_couplings())
        throw std::invalid_argument("closed_form_double_B_secular requires g_a = g_b");
    const double g = p.g_a;
    if (p.kappa < 5.0 * g)
        warn_once(g_secular_b2_warn,
                  "double-excitation secular form used below kappa = 5 g");

    DoubleBSecularCoords c;
    const auto sym = two_level_propagator(kSqrt2 * g, p.delta - p.kappa, t);
    c.eta = sym[0] * c0.eta + sym[1] * c0.lambda;
    c.lambda = sym[2] * c0.eta + sym[3] * c0.lambda;
    const auto asym = two_level_propagator(kSqrt2 * g, p.delta + p.kappa, t);
    c.epsilon = asym[0] * c0.epsilon + asym[1] * c0.theta;
    c.theta = asym[2] * c0.epsilon + asym[3] * c0.theta;
    return c;
}

TrappingVerdict is_population_trapping(const Matrix& M, const StateVector& v) {
    if (M.rows() != M.cols() || M.rows() != v.dim())
        throw std::invalid_argument("is_population_trapping: dimension mismatch");
    const double n2 = v.squared_norm();
    if (std::abs(n2 - 1.0) > 1e-9)
        throw std::invalid_argument("is_population_trapping: state must be unit norm");

    const Vector Mv = M * v.amplitudes;
    const Complex lambda = v.amplitudes.dot(Mv);  // Rayleigh quotient
    const double resid = (Mv - lambda * v.amplitudes).cwiseAbs().maxCoeff();
    const double tol = 1e-10 * std::max(1.0, M.cwiseAbs().maxCoeff());

    TrappingVerdict out;
    out.eigenvalue = lambda.real();
    out.residual = resid;
    out.trapped = resid <= tol && std::abs(lambda.imag()) <= tol;
    return out;
}

LeakageReport lossy_two_state_check(CouplingConfig config,
                                    const SystemParams& p,
                                    const StateVector& psi0,
                                    const std::vector<double>& times) {
    p.validate();

    auto embed = [&](const StateVector& s) {
        Vector v = Vector::Zero(psi0.dim());
        v.head(s.dim()) = s.amplitudes;
        return v;
    };

    // candidate spans, each a (label, pair of columns)
    std::vector<std::pair<std::string, Matrix>> candidates;
    auto add_named = [&](const char* name, const char* first, const char* second) {
        Matrix S(psi0.dim(), 2);
        S.col(0) = embed(named_state(first, p));
        S.col(1) = embed(named_state(second, p));
        candidates.emplace_back(name, std::move(S));
    };

    const bool two_quanta = psi0.manifold == Manifold::Double ||
                            psi0.manifold == Manifold::Augmented;
    if (config == CouplingConfig::AtomMediated) {
        if (psi0.manifold == Manifold::Single) add_named("w1/x1", "w1", "x1");
        if (two_quanta && p.equal_couplings()) {
            add_named("w/q", "w", "q");
            add_named("u/z", "u", "z");
        }
    } else {
        if (psi0.manifold == Manifold::Single && p.equal_couplings()) {
            const Matrix V = frame_states(Frame::SingleB, Manifold::Single, p);
            Matrix S(4, 2);
            S.col(0) = V.col(0); S.col(1) = V.col(2);
            candidates.emplace_back("s/plus", S);
            S.col(0) = V.col(1); S.col(1) = V.col(3);
            candidates.emplace_back("a/minus", S);
        }
        if (two_quanta && p.equal_couplings())
            add_named("seven_tilde/beta", "seven_tilde", "beta");
    }

    std::string label;
    Matrix span;
    for (auto& [name, S] : candidates) {
        const double inside = (S.adjoint() * psi0.amplitudes).squaredNorm();
        if (inside >= psi0.squared_norm() - 1e-9) {
            label = name;
            span = std::move(S);
            break;
        }
    }
    if (label.empty())
        throw std::invalid_argument(
            "lossy_two_state_check: state is not in a recognized doublet");

    const Matrix M = build_hamiltonian(config, psi0.manifold, p, true);
    const Trajectory traj = propagate(M, psi0, times);

    LeakageReport report;
    report.doublet = label;
    for (const auto& state : traj.states) {
        const double total = state.squaredNorm();
        if (total <= 0.0) continue;
        const double inside = (span.adjoint() * state).squaredNorm();
        report.max_leakage =
            std::max(report.max_leakage, std::max(0.0, (total - inside) / total));
    }
    return report;
}

}  // namespace qduet
