#include "strobo/matrix_ops.hpp"

#include "strobo/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace strobo {

cd hs_inner(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw DimensionError("hs_inner: dimension mismatch");
    return (A.adjoint() * B).trace();
}

double frobenius_norm(const Matrix& A) { return A.norm(); }

double hermiticity_defect(const Matrix& A) {
    return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

Vector vectorize(const Matrix& A) {
    const auto d = A.rows();
    if (A.cols() != d) throw DimensionError("vectorize: matrix must be square");
    Vector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = A(i, j);
    return v;
}

Matrix devectorize(const Vector& v) {
    const auto n = v.size();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (d * d != n) throw DimensionError("devectorize: length is not a perfect square");
    Matrix A(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) A(i, j) = v(i * d + j);
    return A;
}

std::vector<Observable> hermitian_basis(int d) {
    if (d < 1) throw DimensionError("hermitian_basis: d must be >= 1");
    std::vector<Observable> basis;
    basis.reserve(static_cast<std::size_t>(d) * d);

    Matrix id = Matrix::Identity(d, d);
    basis.push_back({id / std::sqrt(static_cast<double>(d))});

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Matrix sym = Matrix::Zero(d, d);
            sym(i, j) = inv_sqrt2;
            sym(j, i) = inv_sqrt2;
            basis.push_back({sym});

            Matrix asym = Matrix::Zero(d, d);
            asym(i, j) = cd(0.0, -inv_sqrt2);
            asym(j, i) = cd(0.0, inv_sqrt2);
            basis.push_back({asym});
        }
    }
    // diagonal family: diag(1,...,1,-l,0,...,0)/sqrt(l(l+1)) with l ones
    for (int l = 1; l < d; ++l) {
        Matrix diag = Matrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int k = 0; k < l; ++k) diag(k, k) = norm;
        diag(l, l) = -static_cast<double>(l) * norm;
        basis.push_back({diag});
    }
    return basis;
}

ValidationReport validate_density(const Matrix& rho, double tol) {
    if (rho.rows() != rho.cols())
        throw DimensionError("validate_density: matrix must be square");
    ValidationReport report;
    report.tol = tol;
    report.hermiticity_defect = hermiticity_defect(rho);
    report.trace_defect = std::abs(rho.trace() - cd(1.0, 0.0));
    Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = es.eigenvalues().minCoeff();
    return report;
}

QuditState random_state(int d, std::uint64_t seed) {
    if (d < 1) throw DimensionError("random_state: d must be >= 1");
    Rng rng(seed);
    Matrix g = rng.gaussian_matrix(d, d);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return {rho};
}

Observable random_observable(int d, std::uint64_t seed) {
    if (d < 1) throw DimensionError("random_observable: d must be >= 1");
    Rng rng(seed);
    Matrix g = rng.gaussian_matrix(d, d);
    return {0.5 * (g + g.adjoint())};
}

}  // namespace strobo
