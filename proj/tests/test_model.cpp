#include <doctest.h>

#include <cmath>

#include "qduet/dynamics.hpp"
#include "qduet/model.hpp"
#include "test_support.hpp"

using namespace qduet;
using qduet::test::random_phase;
using qduet::test::rng;

namespace {
SystemParams params(double ga, double gb, double delta = 0.0, double kappa = 0.0,
                    Complex eps = {1.0, 0.0}, double Gamma = 0.0,
                    double gamma = 0.0) {
    SystemParams p;
    p.g_a = ga; p.g_b = gb; p.delta = delta; p.kappa = kappa; p.epsilon = eps;
    p.Gamma = Gamma; p.gamma = gamma;
    return p;
}
}  // namespace

TEST_CASE("atom-mediated single-excitation matrix pattern") {
    const Matrix M = build_hamiltonian(CouplingConfig::AtomMediated,
                                       Manifold::Single, params(1, 1));
    CHECK(std::abs(M(0, 2) - 1.0) < 1e-15);
    CHECK(std::abs(M(0, 3) - 1.0) < 1e-15);
    CHECK(std::abs(M(1, 2) - 1.0) < 1e-15);
    CHECK(std::abs(M(1, 3) - 1.0) < 1e-15);
    CHECK(std::abs(M(0, 1)) < 1e-15);
    CHECK(std::abs(M(2, 3)) < 1e-15);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(M(k, k)) < 1e-15);
}

TEST_CASE("single-excitation detuning diagonal") {
    const Matrix M = build_hamiltonian(CouplingConfig::AtomMediated,
                                       Manifold::Single, params(1, 1, 2.5));
    CHECK(std::abs(M(0, 0)) < 1e-15);
    CHECK(std::abs(M(1, 1)) < 1e-15);
    CHECK(std::abs(M(2, 2) + 2.5) < 1e-15);
    CHECK(std::abs(M(3, 3) + 2.5) < 1e-15);
}

TEST_CASE("dipole phase folding in the atom-mediated matrix") {
    const Complex eps = random_phase(rng());
    const Matrix M = build_hamiltonian(CouplingConfig::AtomMediated,
                                       Manifold::Single, params(1, 0.5, 0, 0, eps));
    CHECK(std::abs(M(1, 2) - eps * 1.0) < 1e-14);
    CHECK(std::abs(M(1, 3) - eps * 0.5) < 1e-14);
    CHECK(std::abs(M(2, 1) - std::conj(eps)) < 1e-14);
}

TEST_CASE("decoupled limit leaves populations fixed") {
    const Matrix M = build_hamiltonian(CouplingConfig::PhotonMediated,
                                       Manifold::Single, params(0, 0, 2.0, 0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(M(i, j)) < 1e-15);

    Vector v(4);
    v << 0.5, 0.5, Complex(0, 0.5), 0.5;
    const auto traj = propagate(M, make_state(Manifold::Single, v),
                                time_grid(10.0, 21));
    for (const auto& s : traj.states)
        for (int k = 0; k < 4; ++k)
            CHECK(std::norm(s(k)) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("photon-mediated two-excitation matrix: diagonal and kappa links") {
    const double kap = 3.0, d = 1.5;
    const Matrix M = build_hamiltonian(CouplingConfig::PhotonMediated,
                                       Manifold::Double, params(1, 1, d, kap));
    const double diag[8] = {d, 0, 0, -d, 0, -d, 0, -d};
    for (int k = 0; k < 8; ++k) CHECK(std::abs(M(k, k) - diag[k]) < 1e-14);
    CHECK(std::abs(M(1, 4) - kap) < 1e-14);               // eg01 <-> eg10
    CHECK(std::abs(M(2, 6) - kap) < 1e-14);               // ge10 <-> ge01
    CHECK(std::abs(M(3, 5) - std::sqrt(2.0) * kap) < 1e-14);  // gg11 <-> gg20
    CHECK(std::abs(M(3, 7) - std::sqrt(2.0) * kap) < 1e-14);  // gg11 <-> gg02
    CHECK(std::abs(M(5, 7)) < 1e-15);  // no direct two-photon hop
}

TEST_CASE("atom-mediated two-excitation couplings carry sqrt(2) photon factors") {
    const Matrix M = build_hamiltonian(CouplingConfig::AtomMediated,
                                       Manifold::Double, params(1.0, 0.5));
    CHECK(std::abs(M(4, 5) - std::sqrt(2.0) * 1.0) < 1e-14);  // eg10 <-> gg20
    CHECK(std::abs(M(1, 7) - std::sqrt(2.0) * 0.5) < 1e-14);  // eg01 <-> gg02
    CHECK(std::abs(M(0, 2) - 1.0) < 1e-14);                   // ee00 <-> ge10
    CHECK(std::abs(M(0, 1) - 0.5) < 1e-14);                   // ee00 <-> eg01
}

TEST_CASE("lossless matrices are Hermitian, all manifolds and configs") {
    auto& r = rng();
    for (int it = 0; it < 20; ++it) {
        const auto p = params(0.3 + it * 0.1, 1.9 - it * 0.05, -1.0 + it * 0.2,
                              0.5 + it * 0.3, random_phase(r));
        for (auto config :
             {CouplingConfig::AtomMediated, CouplingConfig::PhotonMediated})
            for (auto m : {Manifold::Vacuum, Manifold::Single, Manifold::Double,
                           Manifold::Augmented}) {
                const Matrix M = build_hamiltonian(config, m, p);
                CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
            }
    }
}

TEST_CASE("the vacuum state couples to nothing in the augmented manifold") {
    for (auto config :
         {CouplingConfig::AtomMediated, CouplingConfig::PhotonMediated}) {
        const Matrix M = build_hamiltonian(config, Manifold::Augmented,
                                           params(1, 0.7, 0.4, 2.0));
        for (int k = 0; k < 8; ++k) {
            CHECK(std::abs(M(8, k)) < 1e-15);
            CHECK(std::abs(M(k, 8)) < 1e-15);
        }
    }
}

TEST_CASE("loss terms sit on the diagonal with the excitation counts") {
    const auto p = params(1, 1, 0, 0, {1, 0}, 0.04, 0.1);
    const Matrix M = build_hamiltonian(CouplingConfig::AtomMediated,
                                       Manifold::Augmented, p, true);
    // ee00: -i Gamma ; eg01: -i(Gamma+gamma)/2 ; gg20: -i gamma ; gg00: 0
    CHECK(std::abs(M(0, 0).imag() + 0.04) < 1e-15);
    CHECK(std::abs(M(1, 1).imag() + 0.07) < 1e-15);
    CHECK(std::abs(M(5, 5).imag() + 0.1) < 1e-15);
    CHECK(std::abs(M(8, 8).imag()) < 1e-15);

    Eigen::ComplexEigenSolver<Matrix> es(M);
    for (int k = 0; k < 9; ++k)
        CHECK(es.eigenvalues()(k).imag() < 1e-12);
}

TEST_CASE("collective frame, atom-mediated: u and y decouple") {
    for (double delta : {0.0, 1.3}) {
        const auto res =
            collective_frame(CouplingConfig::AtomMediated, params(0.9, 1.7, delta));
        REQUIRE(res.labels == std::vector<std::string>{"w1", "u1", "x1", "y1"});
        CHECK(res.decoupled);
        CHECK(res.cross_coupling == 0.0);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(res.transformed(1, k)) < 1e-13);  // u row empty
            if (k != 3) CHECK(std::abs(res.transformed(3, k)) < 1e-13);
        }
        CHECK(std::abs(res.transformed(3, 3) + delta) < 1e-13);  // y keeps phase
        // w-x coupling is sqrt(2) g0
        const double g0 = std::hypot(0.9, 1.7);
        CHECK(std::abs(res.transformed(0, 2) - std::sqrt(2.0) * g0) < 1e-13);
    }
}

TEST_CASE("collective frame, photon-mediated: split modes and cross weight") {
    const auto equal = collective_frame(CouplingConfig::PhotonMediated,
                                        params(1, 1, 0.0, 2.0));
    CHECK(equal.decoupled);
    CHECK(equal.cross_coupling == doctest::Approx(0.0));
    // mode energies split by 2 kappa
    CHECK(equal.transformed(0, 0).real() == doctest::Approx(2.0));
    CHECK(equal.transformed(1, 1).real() == doctest::Approx(-2.0));

    const auto skew = collective_frame(CouplingConfig::PhotonMediated,
                                       params(1, 0, 0.0, 2.0));
    CHECK_FALSE(skew.decoupled);
    CHECK(skew.cross_coupling == doctest::Approx(1.0));  // (1-0)/g0 with g0 = 1
}

TEST_CASE("a constant diagonal shift changes no population") {
    const auto p = params(0.9, 1.4, 1.2, 0, random_phase(rng()));
    const Matrix M = build_hamiltonian(CouplingConfig::AtomMediated,
                                       Manifold::Single, p);
    const Matrix shifted = M + 1.2 * Matrix::Identity(4, 4);
    const auto psi0 = qduet::test::random_state(Manifold::Single, rng());
    const auto ta = propagate(M, psi0, time_grid(20.0, 201));
    const auto tb = propagate(shifted, psi0, time_grid(20.0, 201));
    for (std::size_t k = 0; k < ta.states.size(); ++k)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(std::norm(ta.states[k](j)) -
                           std::norm(tb.states[k](j))) < 1e-10);
}

TEST_CASE("vacuum manifold Hamiltonian is the 1x1 zero") {
    const Matrix M = build_hamiltonian(CouplingConfig::AtomMediated,
                                       Manifold::Vacuum, params(1, 1, 3.0));
    REQUIRE(M.rows() == 1);
    CHECK(std::abs(M(0, 0)) < 1e-15);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(params(-1, 1).validate(), std::invalid_argument);
    auto p = params(1, 1);
    p.epsilon = Complex(0.5, 0.0);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = params(1, 1);
    p.Gamma = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
