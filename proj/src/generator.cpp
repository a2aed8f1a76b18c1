#include "strobo/generator.hpp"

#include "strobo/matrix_ops.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace strobo {

Superoperator build_generator(const HamiltonianSpec& H) {
    const int d = H.dim();
    const Matrix h = H.dense();
    const Matrix h2 = h * h;
    const Matrix id = Matrix::Identity(d, d);

    Matrix L = -0.5 * (Eigen::kroneckerProduct(h2, id) +
                       Eigen::kroneckerProduct(id, h2.transpose())) +
               Eigen::kroneckerProduct(h, h.transpose());
    return {d, std::move(L)};
}

SpectrumTable generator_spectrum(const HamiltonianSpec& H, double tol) {
    const auto& lambda = H.distinct_eigenvalues();
    const auto& mult = H.multiplicities();
    const int m = static_cast<int>(lambda.size());

    std::vector<std::pair<double, int>> raw;  // (nu, weight) over ordered pairs
    raw.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double gap = lambda[static_cast<std::size_t>(i)] -
                               lambda[static_cast<std::size_t>(j)];
            raw.emplace_back(-0.5 * gap * gap,
                             mult[static_cast<std::size_t>(i)] *
                                 mult[static_cast<std::size_t>(j)]);
        }
    }
    std::sort(raw.begin(), raw.end());

    SpectrumTable table;
    table.grouping_tol = tol;
    for (const auto& [nu, weight] : raw) {
        if (!table.entries.empty() && nu - table.entries.back().value <= tol) {
            table.entries.back().multiplicity += weight;
        } else {
            table.entries.push_back({nu, weight});
        }
    }
    return table;
}

QuditState evolve_exact(const HamiltonianSpec& H, const QuditState& rho0, double t) {
    if (t < 0.0) throw std::invalid_argument("evolve_exact: t must be nonnegative");
    if (rho0.dim() != H.dim()) throw DimensionError("evolve_exact: dimension mismatch");

    const int d = H.dim();
    const auto& lambda = H.levels();
    const Matrix& u = H.eigenbasis();

    Matrix tilde = u.adjoint() * rho0.rho * u;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double gap = lambda[static_cast<std::size_t>(i)] -
                               lambda[static_cast<std::size_t>(j)];
            tilde(i, j) *= std::exp(-0.5 * t * gap * gap);
        }
    }
    return {u * tilde * u.adjoint()};
}

QuditState evolve_expm(const Superoperator& L, const QuditState& rho0, double t) {
    if (t < 0.0) throw std::invalid_argument("evolve_expm: t must be nonnegative");
    if (rho0.dim() != L.dim) throw DimensionError("evolve_expm: dimension mismatch");
    const Matrix propagator = expm(t * L.matrix);
    return {devectorize(propagator * vectorize(rho0.rho))};
}

QuditState evolve_quadrature(const HamiltonianSpec& H, const QuditState& rho0, double t,
                             int nodes) {
    if (t <= 0.0) throw std::invalid_argument("evolve_quadrature: t must be positive");
    if (nodes < 1) throw std::invalid_argument("evolve_quadrature: nodes must be >= 1");
    if (rho0.dim() != H.dim()) throw DimensionError("evolve_quadrature: dimension mismatch");

    const int d = H.dim();
    const auto& lambda = H.levels();
    const Matrix& u = H.eigenbasis();
    const Matrix tilde = u.adjoint() * rho0.rho * u;

    const GaussHermiteRule rule = gauss_hermite(nodes);
    const double s_scale = std::sqrt(2.0 * t);
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);

    Matrix acc = Matrix::Zero(d, d);
    Vector phase(d);
    for (int q = 0; q < nodes; ++q) {
        const double s = s_scale * rule.nodes(q);
        for (int i = 0; i < d; ++i)
            phase(i) = std::exp(cd(0.0, -s * lambda[static_cast<std::size_t>(i)]));
        // e^{-iHs} ρ e^{iHs} in the eigenbasis
        acc += (rule.weights(q) * inv_sqrt_pi) *
               (phase.asDiagonal() * tilde * phase.conjugate().asDiagonal());
    }
    return {u * acc * u.adjoint()};
}

Superoperator adjoint_generator(const Superoperator& L) {
    return {L.dim, L.matrix.adjoint()};
}

Matrix apply_superoperator(const Superoperator& L, const Matrix& X) {
    if (X.rows() != L.dim || X.cols() != L.dim)
        throw DimensionError("apply_superoperator: dimension mismatch");
    return devectorize(L.matrix * vectorize(X));
}

Matrix expm(const Matrix& A) { return A.exp(); }

// Golub-Welsch on the Jacobi matrix of the Hermite weight e^{-u²}:
// off-diagonal entries √(k/2), weights √π v₀².
GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    RealMatrix jacobi = RealMatrix::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(jacobi);
    GaussHermiteRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights.resize(n);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int k = 0; k < n; ++k) {
        const double v0 = es.eigenvectors()(0, k);
        rule.weights(k) = sqrt_pi * v0 * v0;
    }
    return rule;
}

}  // namespace strobo
