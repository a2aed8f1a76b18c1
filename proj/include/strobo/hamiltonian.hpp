// Hermitian operator given as a dense matrix or by its spectrum; every
// spectral quantity in the library (generator spectrum, cyclicity indices,
// minimal polynomial) flows from here.

#pragma once

#include "strobo/types.hpp"

#include <optional>
#include <vector>

namespace strobo {

class HamiltonianSpec {
  public:
    static HamiltonianSpec from_dense(const Matrix& H, double tol = kDefaultTol);

    // eigenvalues strictly increasing, multiplicities positive; the optional
    // eigenbasis is unitary with columns grouped by eigenvalue (identity when
    // absent).
    static HamiltonianSpec from_spectrum(std::vector<double> eigenvalues,
                                         std::vector<int> multiplicities,
                                         std::optional<Matrix> eigenbasis = std::nullopt);

    int dim() const { return dim_; }

    Matrix dense() const;  // U diag(levels) U^†

    // per-level eigenvalues, repeated by multiplicity, ascending; size d
    const std::vector<double>& levels() const { return levels_; }

    // unitary with column i the eigenvector of levels()[i]
    const Matrix& eigenbasis() const { return eigenbasis_; }

    const std::vector<double>& distinct_eigenvalues() const { return distinct_; }
    const std::vector<int>& multiplicities() const { return multiplicities_; }

  private:
    HamiltonianSpec() = default;

    int dim_ = 0;
    std::vector<double> levels_;
    Matrix eigenbasis_;
    std::vector<double> distinct_;
    std::vector<int> multiplicities_;
};

}  // namespace strobo
