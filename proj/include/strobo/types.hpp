// Common aliases, default tolerances, and the error taxonomy shared with the
// CLI exit-code contract.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace strobo {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Validity checks (Hermiticity, trace, positivity, rank decisions).
inline constexpr double kDefaultTol = 1e-9;
// Eigenvalue grouping for spectra of the generator; resonance detection
// shares this notion of "equal eigenvalue".
inline constexpr double kGroupingTol = 1e-8;
// Local tolerance of the adaptive integrator behind the alpha ODE system.
inline constexpr double kOdeTol = 1e-12;

// Exit-code mapping used by the CLI: 2 parse, 3 dimensional, 4 design retry
// exhaustion, 5 singular grid, 6 rank deficiency.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DesignFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularGridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RankDeficiencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Density matrix of a d-level system. Validity (Hermitian, unit trace,
// positive semidefinite) is checked by validate_density, not enforced at
// construction: reconstruction estimates may legitimately violate positivity.
struct QuditState {
    Matrix rho;
    int dim() const { return static_cast<int>(rho.rows()); }
};

// Self-adjoint operator representing a measured quantity.
struct Observable {
    Matrix op;
    int dim() const { return static_cast<int>(op.rows()); }
};

}  // namespace strobo
