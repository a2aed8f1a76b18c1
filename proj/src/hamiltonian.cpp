#include "strobo/hamiltonian.hpp"

#include "strobo/matrix_ops.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace strobo {

HamiltonianSpec HamiltonianSpec::from_dense(const Matrix& H, double tol) {
    if (H.rows() != H.cols())
        throw DimensionError("HamiltonianSpec: dense matrix must be square");
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if (hermiticity_defect(H) > tol * scale)
        throw std::invalid_argument("HamiltonianSpec: dense matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.adjoint()));
    HamiltonianSpec spec;
    spec.dim_ = static_cast<int>(H.rows());
    spec.levels_.assign(es.eigenvalues().data(), es.eigenvalues().data() + spec.dim_);
    spec.eigenbasis_ = es.eigenvectors();

    // group near-coincident levels into (eigenvalue, multiplicity) pairs
    for (int i = 0; i < spec.dim_; ++i) {
        if (!spec.distinct_.empty() &&
            spec.levels_[i] - spec.distinct_.back() <= tol * scale) {
            ++spec.multiplicities_.back();
        } else {
            spec.distinct_.push_back(spec.levels_[i]);
            spec.multiplicities_.push_back(1);
        }
    }
    return spec;
}

HamiltonianSpec HamiltonianSpec::from_spectrum(std::vector<double> eigenvalues,
                                               std::vector<int> multiplicities,
                                               std::optional<Matrix> eigenbasis) {
    if (eigenvalues.empty())
        throw std::invalid_argument("HamiltonianSpec: empty spectrum");
    if (eigenvalues.size() != multiplicities.size())
        throw DimensionError("HamiltonianSpec: eigenvalue/multiplicity count mismatch");
    for (std::size_t i = 1; i < eigenvalues.size(); ++i)
        if (eigenvalues[i] <= eigenvalues[i - 1])
            throw std::invalid_argument("HamiltonianSpec: eigenvalues must be strictly increasing");

    int d = 0;
    for (int n : multiplicities) {
        if (n < 1) throw std::invalid_argument("HamiltonianSpec: multiplicities must be positive");
        d += n;
    }

    HamiltonianSpec spec;
    spec.dim_ = d;
    spec.distinct_ = std::move(eigenvalues);
    spec.multiplicities_ = std::move(multiplicities);
    for (std::size_t i = 0; i < spec.distinct_.size(); ++i)
        spec.levels_.insert(spec.levels_.end(),
                            static_cast<std::size_t>(spec.multiplicities_[i]),
                            spec.distinct_[i]);

    if (eigenbasis) {
        if (eigenbasis->rows() != d || eigenbasis->cols() != d)
            throw DimensionError("HamiltonianSpec: eigenbasis dimension mismatch");
        const double unitarity =
            (eigenbasis->adjoint() * (*eigenbasis) - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
        if (unitarity > 1e-8)
            throw std::invalid_argument("HamiltonianSpec: eigenbasis is not unitary");
        spec.eigenbasis_ = std::move(*eigenbasis);
    } else {
        spec.eigenbasis_ = Matrix::Identity(d, d);
    }
    return spec;
}

Matrix HamiltonianSpec::dense() const {
    Vector diag(dim_);
    for (int i = 0; i < dim_; ++i) diag(i) = levels_[static_cast<std::size_t>(i)];
    return eigenbasis_ * diag.asDiagonal() * eigenbasis_.adjoint();
}

}  // namespace strobo
