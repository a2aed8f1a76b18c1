// Seeded samplers for randomized property checks: spectra with controlled
// separation, arithmetic-progression spectra, and dense Hermitian matrices
// of moderate spectral scale.

#pragma once

#include "strobo/cyclicity.hpp"
#include "strobo/hamiltonian.hpp"
#include "strobo/rng.hpp"
#include "strobo/types.hpp"

#include <algorithm>
#include <vector>

namespace strobo {

struct SpectrumDraw {
    std::vector<double> eigenvalues;
    std::vector<int> multiplicities;
};

// m strictly increasing eigenvalues in [lo, hi] with pairwise gaps >= min_gap,
// multiplicities in [1, max_mult] resampled until the total dimension fits.
inline SpectrumDraw random_spectrum(Rng& rng, int min_m, int max_m, int max_mult,
                                    int max_d, double lo = 0.0, double hi = 2.0,
                                    double min_gap = 0.05, int min_d = 1) {
    for (;;) {
        const int m = rng.uniform_int(min_m, max_m);
        std::vector<double> values;
        while (static_cast<int>(values.size()) < m) {
            const double v = rng.uniform(lo, hi);
            bool ok = true;
            for (double w : values)
                if (std::abs(v - w) < min_gap) ok = false;
            if (ok) values.push_back(v);
        }
        std::sort(values.begin(), values.end());

        std::vector<int> mult(static_cast<std::size_t>(m));
        int d = 0;
        for (int i = 0; i < m; ++i) {
            mult[static_cast<std::size_t>(i)] = rng.uniform_int(1, max_mult);
            d += mult[static_cast<std::size_t>(i)];
        }
        if (d >= min_d && d <= max_d) return {std::move(values), std::move(mult)};
    }
}

// λ_k = λ_1 + (k-1)c with random start and step
inline SpectrumDraw random_arithmetic_spectrum(Rng& rng, int min_m, int max_m,
                                               int max_mult, int max_d) {
    for (;;) {
        const int m = rng.uniform_int(min_m, max_m);
        const double start = rng.uniform(-1.0, 1.0);
        const double step = rng.uniform(0.2, 1.5);
        std::vector<double> values(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) values[static_cast<std::size_t>(k)] = start + k * step;

        std::vector<int> mult(static_cast<std::size_t>(m));
        int d = 0;
        for (int i = 0; i < m; ++i) {
            mult[static_cast<std::size_t>(i)] = rng.uniform_int(1, max_mult);
            d += mult[static_cast<std::size_t>(i)];
        }
        if (d <= max_d) return {std::move(values), std::move(mult)};
    }
}

// Non-resonant spectral draw whose generator roots are pairwise separated by
// at least root_gap. Clustered roots make the alpha coefficient problem
// ill-conditioned, so samplers feeding it reject them.
inline HamiltonianSpec random_separated_hamiltonian(Rng& rng, int min_m, int max_m,
                                                    int max_mult, int max_d,
                                                    double root_gap = 0.02,
                                                    int min_d = 1) {
    for (;;) {
        SpectrumDraw draw =
            random_spectrum(rng, min_m, max_m, max_mult, max_d, 0.0, 1.5, 0.15, min_d);
        if (resonance_report(draw.eigenvalues, draw.multiplicities).resonant) continue;
        HamiltonianSpec H =
            HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
        const SpectrumTable table = generator_spectrum(H);
        bool separated = true;
        for (std::size_t i = 1; i < table.entries.size(); ++i)
            if (table.entries[i].value - table.entries[i - 1].value < root_gap)
                separated = false;
        if (separated) return H;
    }
}

// Dense Hermitian with spectrum rescaled into [0, spread]; keeps the minimal
// polynomial roots inside a well-conditioned interval.
inline Matrix random_hermitian_scaled(Rng& rng, int d, double spread = 1.2) {
    Matrix g = rng.gaussian_matrix(d, d);
    Matrix h = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (hi - lo < 1e-6) return Matrix::Zero(d, d);
    return (h - lo * Matrix::Identity(d, d)) * (spread / (hi - lo));
}

}  // namespace strobo
