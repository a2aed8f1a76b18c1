#include "strobo/tomography.hpp"

#include "strobo/matrix_ops.hpp"
#include "strobo/rng.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace strobo {

namespace {

// rows vec((L*)^k Q_i)^† for i = 0..n-1 (outer), k = 0..m-1 (inner)
Matrix spanning_matrix(const Superoperator& L_adj, const ObservableSet& set) {
    const int d = L_adj.dim;
    const int n = set.size();
    const int m = set.krylov_depth;
    Matrix S(static_cast<Eigen::Index>(n) * m, static_cast<Eigen::Index>(d) * d);
    for (int i = 0; i < n; ++i) {
        Matrix q = set.observables[static_cast<std::size_t>(i)].op;
        if (q.rows() != d) throw DimensionError("krylov_span: observable dimension mismatch");
        for (int k = 0; k < m; ++k) {
            S.row(static_cast<Eigen::Index>(i) * m + k) = vectorize(q).adjoint();
            if (k + 1 < m) q = apply_superoperator(L_adj, q);
        }
    }
    return S;
}

int numerical_rank(const Matrix& A, double tol) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(A);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > tol * sigma(0)) ++rank;
    return rank;
}

}  // namespace

SpanResult krylov_span(const Superoperator& L_adj, const ObservableSet& set, double tol) {
    SpanResult result;
    result.basis = spanning_matrix(L_adj, set);
    result.rank = numerical_rank(result.basis, tol);
    return result;
}

ObservableSet design_observables(const Superoperator& L, int eta, std::uint64_t seed,
                                 int max_retries) {
    const int d = L.dim;
    const int d2 = d * d;
    if (eta < 1) throw std::invalid_argument("design_observables: eta must be >= 1");

    const Superoperator L_adj = adjoint_generator(L);
    const int m = minimal_polynomial(L).degree;

    // trivial generator: every Krylov space is one-dimensional, so the only
    // eta = d² choice is a full orthonormal Hermitian basis
    if (eta == d2) {
        ObservableSet set;
        set.observables = hermitian_basis(d);
        set.krylov_depth = m;
        return set;
    }

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng(seed + static_cast<std::uint64_t>(attempt));
        ObservableSet set;
        set.krylov_depth = m;

        // orthonormal basis (vectorized) of the accumulated Krylov span
        std::vector<Vector> span_basis;
        const auto absorb = [&](const Matrix& x) {
            Vector v = vectorize(x);
            for (const Vector& b : span_basis) v -= b.dot(v) * b;
            const double norm = v.norm();
            if (norm > 1e-10) span_basis.push_back(v / norm);
        };
        const auto add_krylov_family = [&](const Matrix& q0) {
            Matrix q = q0;
            for (int k = 0; k < m; ++k) {
                absorb(q);
                if (k + 1 < m) q = apply_superoperator(L_adj, q);
            }
        };

        bool degenerate = false;
        for (int i = 0; i < eta && !degenerate; ++i) {
            Matrix g = rng.gaussian_matrix(d, d);
            Matrix candidate = 0.5 * (g + g.adjoint());
            if (i > 0) {
                // project off the current span, then re-Hermitize
                Vector v = vectorize(candidate);
                for (const Vector& b : span_basis) v -= b.dot(v) * b;
                Matrix projected = devectorize(v);
                candidate = 0.5 * (projected + projected.adjoint());
                if (candidate.norm() < 1e-10) {
                    degenerate = true;
                    break;
                }
                candidate /= candidate.norm();
            }
            set.observables.push_back({candidate});
            add_krylov_family(candidate);
        }
        if (degenerate) continue;

        if (static_cast<int>(span_basis.size()) == d2 &&
            krylov_span(L_adj, set).rank == d2)
            return set;
    }
    throw DesignFailure("design_observables: retries exhausted without a spanning set");
}

DataMatrix simulate_data(const HamiltonianSpec& H, const QuditState& rho0,
                         const ObservableSet& set, const TimeGrid& grid,
                         double noise_sigma, std::uint64_t seed) {
    grid.validate();
    if (rho0.dim() != H.dim()) throw DimensionError("simulate_data: state dimension mismatch");

    const std::vector<double> instants = grid.instants();
    const int n = set.size();
    const int r = static_cast<int>(instants.size());

    DataMatrix data;
    data.grid = grid;
    data.noise_sigma = noise_sigma;
    data.values.resize(n, r);

    for (int j = 0; j < r; ++j) {
        const QuditState rho_t = evolve_exact(H, rho0, instants[static_cast<std::size_t>(j)]);
        for (int i = 0; i < n; ++i) {
            const Matrix& q = set.observables[static_cast<std::size_t>(i)].op;
            if (q.rows() != H.dim())
                throw DimensionError("simulate_data: observable dimension mismatch");
            data.values(i, j) = (q * rho_t.rho).trace().real();
        }
    }
    if (noise_sigma > 0.0) {
        Rng rng(seed);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j) data.values(i, j) += noise_sigma * rng.gaussian();
    }
    return data;
}

ReconstructionResult reconstruct(const ObservableSet& set, const TimeGrid& grid,
                                 const DataMatrix& data, const Superoperator& L,
                                 const AlphaSystem& sys, AlphaMethod method) {
    grid.validate();
    const int d = L.dim;
    const int d2 = d * d;
    const int n = set.size();
    const int m = sys.m;

    if (static_cast<int>(grid.c.size()) != m || data.values.cols() != m)
        throw SingularGridError("reconstruct: grid must supply exactly m time instants");
    if (data.values.rows() != n)
        throw DimensionError("reconstruct: data row count does not match observable count");
    if (set.krylov_depth != m)
        throw DimensionError("reconstruct: observable set depth does not match the alpha system");

    // stage 1: per-observable solve of [α_k(c_j t)] b_i = data row i
    RealMatrix A(m, m);
    const std::vector<double> instants = grid.instants();
    for (int j = 0; j < m; ++j)
        A.row(j) = alpha_at(sys, instants[static_cast<std::size_t>(j)], method).transpose();

    Eigen::JacobiSVD<RealMatrix> alpha_svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& alpha_sigma = alpha_svd.singularValues();
    if (alpha_sigma(m - 1) <= 1e-12 * alpha_sigma(0))
        throw SingularGridError("reconstruct: singular alpha matrix (invalid time grid)");

    RealMatrix B(n, m);  // b_{ik} = ((L*)^k Q_i, ρ0)
    for (int i = 0; i < n; ++i)
        B.row(i) = alpha_svd.solve(data.values.row(i).transpose()).transpose();

    // stage 2: stacked least squares for vec(ρ0)
    const Superoperator L_adj = adjoint_generator(L);
    const SpanResult span = krylov_span(L_adj, set);
    if (span.rank < d2)
        throw RankDeficiencyError("reconstruct: observables do not span the operator space");

    Vector b_stacked(static_cast<Eigen::Index>(n) * m);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k)
            b_stacked(static_cast<Eigen::Index>(i) * m + k) = B(i, k);

    Eigen::JacobiSVD<Matrix> span_svd(span.basis,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector x = span_svd.solve(b_stacked);

    ReconstructionResult result;
    result.spanning_rank = span.rank;
    result.residual = (span.basis * x - b_stacked).norm();

    // condition number of the combined map ρ0 ↦ data
    Matrix combined(static_cast<Eigen::Index>(n) * m, d2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Vector row = Vector::Zero(d2);
            for (int k = 0; k < m; ++k)
                row += A(j, k) * span.basis.row(static_cast<Eigen::Index>(i) * m + k).transpose();
            combined.row(static_cast<Eigen::Index>(i) * m + j) = row.transpose();
        }
    Eigen::JacobiSVD<Matrix> combined_svd(combined);
    const auto& cs = combined_svd.singularValues();
    result.condition_number = (cs(cs.size() - 1) > 0.0)
                                  ? cs(0) / cs(cs.size() - 1)
                                  : std::numeric_limits<double>::infinity();

    // project onto the Hermitian, unit-trace affine subspace
    Matrix rho = devectorize(x);
    rho = 0.5 * (rho + rho.adjoint());
    rho += ((1.0 - rho.trace().real()) / d) * Matrix::Identity(d, d);
    result.rho0_estimate = {std::move(rho)};
    return result;
}

std::vector<QuditState> reconstruct_trajectory(const ReconstructionResult& result,
                                               const HamiltonianSpec& H,
                                               const std::vector<double>& t_list) {
    std::vector<QuditState> trajectory;
    trajectory.reserve(t_list.size());
    for (double t : t_list) {
        if (t < 0.0) throw std::invalid_argument("reconstruct_trajectory: negative time");
        trajectory.push_back(evolve_exact(H, result.rho0_estimate, t));
    }
    return trajectory;
}

DistinguishabilityResult distinguishability_check(const HamiltonianSpec& H,
                                                  const QuditState& rho1,
                                                  const QuditState& rho2,
                                                  const ObservableSet& set,
                                                  const TimeGrid& grid, double tol) {
    if (rho1.dim() != rho2.dim())
        throw DimensionError("distinguishability_check: state dimension mismatch");
    const std::vector<double> instants = grid.instants();
    for (std::size_t j = 0; j < instants.size(); ++j) {
        const QuditState r1 = evolve_exact(H, rho1, instants[j]);
        const QuditState r2 = evolve_exact(H, rho2, instants[j]);
        for (int i = 0; i < set.size(); ++i) {
            const Matrix& q = set.observables[static_cast<std::size_t>(i)].op;
            const double e1 = (q * r1.rho).trace().real();
            const double e2 = (q * r2.rho).trace().real();
            if (std::abs(e1 - e2) > tol)
                return {true, i, static_cast<int>(j)};
        }
    }
    return {false, -1, -1};
}

}  // namespace strobo
