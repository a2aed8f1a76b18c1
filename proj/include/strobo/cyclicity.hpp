// Index of cyclicity: the closed form max{κ, γ_1, ..., γ_r} from the
// Hamiltonian multiplicities, the brute-force definition as the largest
// eigenspace dimension of the generator, resonance detection for spectra
// where the two can disagree, and the minimal polynomial of L.

#pragma once

#include "strobo/generator.hpp"
#include "strobo/hamiltonian.hpp"
#include "strobo/types.hpp"

#include <vector>

namespace strobo {

// κ = Σ n_i²
int kappa(const std::vector<int>& multiplicities);

// γ_k = 2 Σ_{i=1}^{m-k} n_i n_{i+k} for k = 1..r, where r = (m-1)/2 for odd
// m and (m-2)/2 for even m (empty when r = 0).
std::vector<int> gammas(const std::vector<int>& multiplicities);

// max{κ, γ_1, ..., γ_r}
int index_closed_form(const std::vector<int>& multiplicities);
int index_closed_form(const HamiltonianSpec& H);

// Largest eigenspace dimension over the distinct eigenvalues of L; kernel
// dimensions counted by singular values below tol·σ_max. Works for any
// generator matrix, not only the Gaussian one.
int index_bruteforce(const Superoperator& L, double tol = kDefaultTol);

// Minimal observable count for purely Hamiltonian evolution: Σ n_i².
int index_isolated(const std::vector<int>& multiplicities);

struct Collision {
    double nu = 0.0;                // merged eigenvalue of L
    std::vector<int> pair_classes;  // index distances |i-j| contributing
};

struct ResonanceInfo {
    bool resonant = false;
    std::vector<Collision> collisions;
};

// resonant iff (λ_i-λ_j)² coincides within tol across two different index
// distances; such collisions merge eigenspaces of L and invalidate the
// closed-form index.
ResonanceInfo resonance_report(const std::vector<double>& eigenvalues,
                               const std::vector<int>& multiplicities,
                               double tol = kGroupingTol);

// Monic polynomial of least degree annihilating L, in the convention
// L^m = Σ_{k<m} d_k L^k; the distinct eigenvalues of L are its simple roots.
struct MinimalPolynomial {
    int degree = 0;
    RealVector d_coeffs;        // size degree
    std::vector<double> roots;  // ascending

    // z^m - Σ d_k z^k
    double eval_monic(double z) const;
};

MinimalPolynomial minimal_polynomial(const SpectrumTable& spectrum);
// Requires a diagonalizable matrix (verified through the eigenvector basis);
// the spectrum must be real up to tol for the real-coefficient convention.
MinimalPolynomial minimal_polynomial(const Superoperator& L, double tol = kDefaultTol);

struct CyclicityReport {
    int kappa = 0;
    std::vector<int> gammas;
    int eta_closed = 0;
    int eta_bruteforce = 0;  // authoritative when the two disagree
    bool resonant = false;
    std::vector<Collision> collisions;
};

CyclicityReport analyze_cyclicity(const HamiltonianSpec& H, double tol = kGroupingTol);

}  // namespace strobo
