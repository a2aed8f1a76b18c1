#include "strobo/cyclicity.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace strobo {

int kappa(const std::vector<int>& multiplicities) {
    if (multiplicities.empty()) throw std::invalid_argument("kappa: empty multiplicity list");
    int sum = 0;
    for (int n : multiplicities) sum += n * n;
    return sum;
}

std::vector<int> gammas(const std::vector<int>& multiplicities) {
    const int m = static_cast<int>(multiplicities.size());
    if (m < 1) throw std::invalid_argument("gammas: empty multiplicity list");
    const int r = (m % 2 == 1) ? (m - 1) / 2 : (m - 2) / 2;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(std::max(r, 0)));
    for (int k = 1; k <= r; ++k) {
        int sum = 0;
        for (int i = 0; i + k < m; ++i)
            sum += multiplicities[static_cast<std::size_t>(i)] *
                   multiplicities[static_cast<std::size_t>(i + k)];
        out.push_back(2 * sum);
    }
    return out;
}

int index_closed_form(const std::vector<int>& multiplicities) {
    int eta = kappa(multiplicities);
    for (int g : gammas(multiplicities)) eta = std::max(eta, g);
    return eta;
}

int index_closed_form(const HamiltonianSpec& H) {
    return index_closed_form(H.multiplicities());
}

int index_isolated(const std::vector<int>& multiplicities) {
    return kappa(multiplicities);
}

namespace {

int kernel_dimension(const Matrix& A, double tol) {
    Eigen::JacobiSVD<Matrix> svd(A);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0) return 0;
    const double threshold = tol * sigma(0);
    int dim = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) <= threshold) ++dim;
    return dim;
}

// cluster complex values within an absolute tolerance, scale-adjusted
std::vector<cd> cluster_eigenvalues(const Vector& values, double tol) {
    std::vector<cd> sorted(values.data(), values.data() + values.size());
    std::sort(sorted.begin(), sorted.end(), [](cd a, cd b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<cd> reps;
    for (cd z : sorted) {
        if (reps.empty() || std::abs(z - reps.back()) > tol)
            reps.push_back(z);
    }
    return reps;
}

}  // namespace

int index_bruteforce(const Superoperator& L, double tol) {
    const Eigen::Index n = L.matrix.rows();
    const double scale = std::max(1.0, L.matrix.cwiseAbs().maxCoeff());

    Eigen::ComplexEigenSolver<Matrix> es(L.matrix, /*computeEigenvectors=*/false);
    const std::vector<cd> reps =
        cluster_eigenvalues(es.eigenvalues(), 100.0 * tol * scale);

    const Matrix id = Matrix::Identity(n, n);
    int eta = 0;
    for (cd lambda : reps)
        eta = std::max(eta, kernel_dimension(lambda * id - L.matrix, tol));
    return eta;
}

ResonanceInfo resonance_report(const std::vector<double>& eigenvalues,
                               const std::vector<int>& multiplicities,
                               double tol) {
    const int m = static_cast<int>(eigenvalues.size());
    if (m != static_cast<int>(multiplicities.size()))
        throw DimensionError("resonance_report: eigenvalue/multiplicity count mismatch");
    for (int i = 1; i < m; ++i)
        if (eigenvalues[static_cast<std::size_t>(i)] <=
            eigenvalues[static_cast<std::size_t>(i - 1)])
            throw std::invalid_argument("resonance_report: eigenvalues must be strictly increasing");

    struct Gap {
        double sq;  // (λ_i - λ_j)²
        int cls;    // |i - j|
    };
    std::vector<Gap> gaps;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double gap = eigenvalues[static_cast<std::size_t>(j)] -
                               eigenvalues[static_cast<std::size_t>(i)];
            gaps.push_back({gap * gap, j - i});
        }
    std::sort(gaps.begin(), gaps.end(),
              [](const Gap& a, const Gap& b) { return a.sq < b.sq; });

    ResonanceInfo info;
    std::size_t group_start = 0;
    for (std::size_t i = 1; i <= gaps.size(); ++i) {
        const bool boundary = (i == gaps.size()) || (gaps[i].sq - gaps[i - 1].sq > tol);
        if (!boundary) continue;
        std::vector<int> classes;
        double mean_sq = 0.0;
        for (std::size_t g = group_start; g < i; ++g) {
            mean_sq += gaps[g].sq;
            if (std::find(classes.begin(), classes.end(), gaps[g].cls) == classes.end())
                classes.push_back(gaps[g].cls);
        }
        if (classes.size() > 1) {
            mean_sq /= static_cast<double>(i - group_start);
            std::sort(classes.begin(), classes.end());
            info.collisions.push_back({-0.5 * mean_sq, std::move(classes)});
            info.resonant = true;
        }
        group_start = i;
    }
    return info;
}

double MinimalPolynomial::eval_monic(double z) const {
    double value = 1.0;  // z^m accumulated via Horner on the monic form
    for (int k = degree - 1; k >= 0; --k) value = value * z - d_coeffs(k);
    return value;
}

namespace {

MinimalPolynomial from_roots(std::vector<double> roots) {
    const int m = static_cast<int>(roots.size());
    // monic coefficients of Π (z - ν_i), ascending powers, c[m] = 1
    std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
    c[0] = 1.0;
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k > 0; --k)
            c[static_cast<std::size_t>(k)] =
                c[static_cast<std::size_t>(k - 1)] -
                roots[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k)];
        c[0] *= -roots[static_cast<std::size_t>(i)];
    }
    MinimalPolynomial mu;
    mu.degree = m;
    mu.roots = std::move(roots);
    mu.d_coeffs.resize(m);
    for (int k = 0; k < m; ++k) mu.d_coeffs(k) = -c[static_cast<std::size_t>(k)];
    return mu;
}

}  // namespace

MinimalPolynomial minimal_polynomial(const SpectrumTable& spectrum) {
    std::vector<double> roots;
    roots.reserve(spectrum.entries.size());
    for (const auto& entry : spectrum.entries) roots.push_back(entry.value);
    return from_roots(std::move(roots));
}

MinimalPolynomial minimal_polynomial(const Superoperator& L, double tol) {
    const Eigen::Index n = L.matrix.rows();
    const double scale = std::max(1.0, L.matrix.cwiseAbs().maxCoeff());

    Eigen::ComplexEigenSolver<Matrix> es(L.matrix, /*computeEigenvectors=*/true);
    Eigen::JacobiSVD<Matrix> svd(es.eigenvectors());
    const auto& sigma = svd.singularValues();
    if (sigma(sigma.size() - 1) <= tol * sigma(0))
        throw std::invalid_argument(
            "minimal_polynomial: matrix is not diagonalizable (rank-deficient eigenbasis)");

    double max_imag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        max_imag = std::max(max_imag, std::abs(es.eigenvalues()(i).imag()));
    if (max_imag > 100.0 * tol * scale)
        throw std::invalid_argument(
            "minimal_polynomial: spectrum is not real; real-coefficient convention does not apply");

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) values.push_back(es.eigenvalues()(i).real());
    std::sort(values.begin(), values.end());

    std::vector<double> roots;
    for (double v : values)
        if (roots.empty() || v - roots.back() > 100.0 * tol * scale) roots.push_back(v);
    return from_roots(std::move(roots));
}

CyclicityReport analyze_cyclicity(const HamiltonianSpec& H, double tol) {
    CyclicityReport report;
    report.kappa = kappa(H.multiplicities());
    report.gammas = gammas(H.multiplicities());
    report.eta_closed = index_closed_form(H.multiplicities());

    const Superoperator L = build_generator(H);
    report.eta_bruteforce = index_bruteforce(L);

    ResonanceInfo resonance =
        resonance_report(H.distinct_eigenvalues(), H.multiplicities(), tol);
    report.resonant = resonance.resonant;
    report.collisions = std::move(resonance.collisions);
    return report;
}

}  // namespace strobo
