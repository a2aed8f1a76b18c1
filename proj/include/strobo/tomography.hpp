// Observable-set design and verification (the Krylov spanning criterion),
// synthetic expectation-value data, and state/trajectory reconstruction by
// the two-stage inversion of E_{t_j}(Q_i) = Σ_k α_k(c_j t) ((L*)^k Q_i, ρ0).

#pragma once

#include "strobo/alpha.hpp"
#include "strobo/generator.hpp"
#include "strobo/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace strobo {

struct ObservableSet {
    std::vector<Observable> observables;
    int krylov_depth = 1;  // minimal polynomial degree m

    int size() const { return static_cast<int>(observables.size()); }
};

// n×r expectations, rows indexed by observable, columns by time instant.
struct DataMatrix {
    RealMatrix values;
    TimeGrid grid;
    double noise_sigma = 0.0;
};

struct SpanResult {
    int rank = 0;
    Matrix basis;  // (n·m)×d², row (i·m + k) = vec((L*)^k Q_i)^†
};

// Stacks the vectorized Krylov family (L*)^k Q_i, k = 0..m-1; spanning iff
// rank = d².
SpanResult krylov_span(const Superoperator& L_adj, const ObservableSet& set,
                       double tol = kDefaultTol);

// Greedy cyclic construction of exactly eta observables whose joint Krylov
// family spans: each candidate is drawn at random, projected off the current
// Krylov span, re-Hermitized, and its own Krylov family adjoined. Retries
// with fresh seeds on non-generic draws.
ObservableSet design_observables(const Superoperator& L, int eta, std::uint64_t seed,
                                 int max_retries = 32);

// values[i][j] = Tr(Q_i ρ(t_j)) via the exact engine, plus optional i.i.d.
// Gaussian noise per entry.
DataMatrix simulate_data(const HamiltonianSpec& H, const QuditState& rho0,
                         const ObservableSet& set, const TimeGrid& grid,
                         double noise_sigma, std::uint64_t seed);

struct ReconstructionResult {
    QuditState rho0_estimate;  // Hermitized, trace-shifted; positivity reported only
    double residual = 0.0;
    double condition_number = 0.0;
    int spanning_rank = 0;
};

// Stage 1 inverts the α-matrix per observable; stage 2 solves the stacked
// least-squares system for vec(ρ0). Throws SingularGridError on an invalid
// grid and RankDeficiencyError when the observables do not span.
ReconstructionResult reconstruct(const ObservableSet& set, const TimeGrid& grid,
                                 const DataMatrix& data, const Superoperator& L,
                                 const AlphaSystem& sys,
                                 AlphaMethod method = AlphaMethod::Interp);

std::vector<QuditState> reconstruct_trajectory(const ReconstructionResult& result,
                                               const HamiltonianSpec& H,
                                               const std::vector<double>& t_list);

struct DistinguishabilityResult {
    bool distinguishable = false;
    int observable_index = -1;
    int instant_index = -1;
};

// First (i, j) with |Tr(Q_i ρ1(t_j)) - Tr(Q_i ρ2(t_j))| > tol under the
// dynamics of H, if any.
DistinguishabilityResult distinguishability_check(const HamiltonianSpec& H,
                                                  const QuditState& rho1,
                                                  const QuditState& rho2,
                                                  const ObservableSet& set,
                                                  const TimeGrid& grid,
                                                  double tol = 1e-10);

}  // namespace strobo
