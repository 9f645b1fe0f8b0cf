#include "qduet/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace qduet {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

Matrix spin_flip(const Matrix& rho) {
    Matrix syy = Matrix::Zero(4, 4);  // sigma_y x sigma_y in {ee,eg,ge,gg}
    syy(0, 3) = -1; syy(1, 2) = 1; syy(2, 1) = 1; syy(3, 0) = -1;
    return syy * rho.conjugate() * syy;
}

void require_two_qubits(const DensityMatrix& rho) {
    if (rho.dims[0] != 2 || rho.dims[1] != 2)
        throw std::invalid_argument("measure requires a two-qubit split");
}

void require_x_form(const Matrix& r) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && i + j != 3 && std::abs(r(i, j)) > 1e-12)
                throw std::invalid_argument("matrix is not of X form");
}

// eigenvalues of the 2x2 Hermitian block [[a, c],[c*, b]]
std::array<double, 2> block_eigs(double a, double b, Complex c) {
    const double mid = 0.5 * (a + b);
    const double rad = std::hypot(0.5 * (a - b), std::abs(c));
    return {mid - rad, mid + rad};
}

}  // namespace

MeasureResult wootters_concurrence(const DensityMatrix& rho) {
    require_two_qubits(rho);
    rho.validate();

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.rho);
    Matrix sqrt_rho = Matrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) {
        const double ev = std::max(0.0, es.eigenvalues()(k));
        sqrt_rho += std::sqrt(ev) * es.eigenvectors().col(k) *
                    es.eigenvectors().col(k).adjoint();
    }
    // the singular values of sqrt(rho) sqrt(rho_tilde) are the square roots
    // of the eigenvalues of rho * rho_tilde, without squaring-induced
    // precision loss near rank deficiency (pure states)
    const Matrix B = sqrt_rho * spin_flip(sqrt_rho);
    Eigen::JacobiSVD<Matrix> svd(B);

    const auto& sv = svd.singularValues();  // descending
    return {clamp01(sv(0) - sv(1) - sv(2) - sv(3)), MeasureMethod::Wootters};
}

MeasureResult xstate_concurrence(const DensityMatrix& rho, XStateVariant variant) {
    require_two_qubits(rho);
    rho.validate();
    require_x_form(rho.rho);
    const Matrix& r = rho.rho;

    double c;
    if (variant == XStateVariant::Shared)
        c = 2.0 * (std::abs(r(1, 2)) -
                   std::sqrt(std::max(0.0, r(0, 0).real() * r(3, 3).real())));
    else
        c = 2.0 * (std::abs(r(0, 3)) -
                   std::sqrt(std::max(0.0, r(1, 1).real() * r(2, 2).real())));
    return {clamp01(std::max(c, 0.0)), MeasureMethod::XState};
}

MeasureResult log_negativity(const DensityMatrix& rho) {
    rho.validate();
    const int da = rho.dims[0];
    const int db = rho.dims[1];

    Matrix pt(rho.dim(), rho.dim());
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
            for (int k = 0; k < da; ++k)
                for (int l = 0; l < db; ++l)
                    pt(i * db + j, k * db + l) = rho.rho(i * db + l, k * db + j);

    Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (int k = 0; k < rho.dim(); ++k)
        if (es.eigenvalues()(k) < 0.0) neg += -es.eigenvalues()(k);
    return {std::max(0.0, std::log2(1.0 + 2.0 * neg)), MeasureMethod::Negativity};
}

double xstate_log_negativity(const DensityMatrix& rho) {
    require_two_qubits(rho);
    require_x_form(rho.rho);
    const Matrix& r = rho.rho;
    // partial transpose swaps the two X coherences between the 2x2 blocks
    const auto outer = block_eigs(r(0, 0).real(), r(3, 3).real(), r(1, 2));
    const auto inner = block_eigs(r(1, 1).real(), r(2, 2).real(), r(0, 3));
    double neg = 0.0;
    for (double mu : {outer[0], outer[1], inner[0], inner[1]})
        if (mu < 0.0) neg += -mu;
    return std::max(0.0, std::log2(1.0 + 2.0 * neg));
}

ConcurrencePair analytic_concurrences_single_A(const SystemParams& p,
                                               const SingleACoords& c) {
    p.validate();
    const double g0sq = p.g0() * p.g0();
    if (g0sq <= 0.0)
        throw std::invalid_argument("analytic concurrences require g0 > 0");

    const double aw = std::norm(c.w) - std::norm(c.u);
    const double bw = 2.0 * std::imag(c.u * std::conj(c.w));
    const double atoms = std::hypot(aw, bw);

    const Complex cross = p.g_a * p.g_b * (std::norm(c.x) - std::norm(c.y)) +
                          p.g_a * p.g_a * c.x * std::conj(c.y) -
                          p.g_b * p.g_b * std::conj(c.x) * c.y;
    const double modes = 2.0 * std::abs(cross) / g0sq;
    return {clamp01(atoms), clamp01(modes)};
}

ConcurrencePair analytic_concurrences_single_B(const SystemParams& p,
                                               const SingleBCoords& c) {
    p.validate();
    const double g0sq = p.g0() * p.g0();
    if (g0sq <= 0.0)
        throw std::invalid_argument("analytic concurrences require g0 > 0");

    const double atoms = 2.0 * p.g_a * p.g_b / g0sq *
                         std::abs(std::norm(c.plus) - std::norm(c.minus));
    const double modes = std::abs(std::norm(c.s) - std::norm(c.a));
    return {clamp01(atoms), clamp01(modes)};
}

}  // namespace qduet
