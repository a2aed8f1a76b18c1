// The Gaussian dephasing generator L(ρ) = -½[H,[H,ρ]], its spectrum, and
// three mutually validating evolution engines for the semigroup exp(tL):
// closed-form dephasing in the H eigenbasis, dense matrix exponential of the
// vectorized generator, and Gauss-Hermite quadrature of the integral form.

#pragma once

#include "strobo/hamiltonian.hpp"
#include "strobo/types.hpp"

#include <vector>

namespace strobo {

// d²×d² linear map on row-major vectorized operators.
struct Superoperator {
    int dim = 0;  // Hilbert-space dimension d
    Matrix matrix;
};

struct SpectrumTable {
    struct Entry {
        double value = 0.0;
        int multiplicity = 0;
    };
    std::vector<Entry> entries;  // ascending by value, pairwise separated > tol
    double grouping_tol = kGroupingTol;

    int total_multiplicity() const {
        int n = 0;
        for (const auto& e : entries) n += e.multiplicity;
        return n;
    }
};

// Matrix of ρ ↦ -½[H,[H,ρ]]: -½(H²⊗I + I⊗(H²)^T) + H⊗H^T. Negative
// semidefinite; kernel is the commutant of H.
Superoperator build_generator(const HamiltonianSpec& H);

// Eigenvalues ν = -½(λ_i - λ_j)² over ordered pairs, grouped within tol;
// multiplicities are sums of n_i n_j over coinciding values (total d²).
SpectrumTable generator_spectrum(const HamiltonianSpec& H, double tol = kGroupingTol);

// In the H eigenbasis (ρ(t))_ij = (ρ0)_ij exp(-t(λ_i-λ_j)²/2).
QuditState evolve_exact(const HamiltonianSpec& H, const QuditState& rho0, double t);

// devectorize(exp(tL) vec ρ0)
QuditState evolve_expm(const Superoperator& L, const QuditState& rho0, double t);

// Gauss-Hermite quadrature of the Gaussian average of unitary conjugations
// after the substitution s = √(2t) u; requires t > 0.
QuditState evolve_quadrature(const HamiltonianSpec& H, const QuditState& rho0, double t,
                             int nodes = 64);

// Adjoint with respect to hs_inner; equals the conjugate transpose of the
// vectorized matrix. For the Gaussian L this is L itself.
Superoperator adjoint_generator(const Superoperator& L);

Matrix apply_superoperator(const Superoperator& L, const Matrix& X);

// Dense matrix exponential (scaling-and-squaring grade accuracy).
Matrix expm(const Matrix& A);

// Nodes and weights for ∫ e^{-u²} f(u) du; weights sum to √π.
struct GaussHermiteRule {
    RealVector nodes;
    RealVector weights;
};
GaussHermiteRule gauss_hermite(int n);

}  // namespace strobo
