// Complex dense-matrix substrate: Hilbert-Schmidt geometry, the vectorization
// convention used by every superoperator in the library, orthonormal Hermitian
// bases, and density-matrix validation.
//
// Vectorization is row-major: v(i*d + j) = A(i, j). Under this convention
// vec(A X B) = (A ⊗ B^T) vec(X), and vec is an isometry from the
// Hilbert-Schmidt inner product (A, B) = Tr(A^† B) to the standard one.

#pragma once

#include "strobo/types.hpp"

#include <cstdint>
#include <vector>

namespace strobo {

// Tr(A^† B); conjugate-linear in the first argument.
cd hs_inner(const Matrix& A, const Matrix& B);

double frobenius_norm(const Matrix& A);

// max |A - A^†| entrywise
double hermiticity_defect(const Matrix& A);

Vector vectorize(const Matrix& A);
Matrix devectorize(const Vector& v);

// d² Hermitian matrices, orthonormal under hs_inner: normalized identity
// first, then the symmetric/antisymmetric pair family, then the diagonal
// (generalized Gell-Mann) family. For d = 2 this is {I, σx, σy, σz}/√2.
std::vector<Observable> hermitian_basis(int d);

struct ValidationReport {
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    double tol = kDefaultTol;
    bool hermitian_ok() const { return hermiticity_defect <= tol; }
    bool trace_ok() const { return trace_defect <= tol; }
    bool positive_ok() const { return min_eigenvalue >= -tol; }
    bool passed() const { return hermitian_ok() && trace_ok() && positive_ok(); }
};

ValidationReport validate_density(const Matrix& rho, double tol = kDefaultTol);

// G G^† / Tr(G G^†) with G a seeded complex Gaussian draw; always a valid state.
QuditState random_state(int d, std::uint64_t seed);

// (G + G^†) / 2 from a seeded complex Gaussian draw.
Observable random_observable(int d, std::uint64_t seed);

}  // namespace strobo
