#include "strobo/verify.hpp"

#include "strobo/alpha.hpp"
#include "strobo/cyclicity.hpp"
#include "strobo/generator.hpp"
#include "strobo/matrix_ops.hpp"
#include "strobo/sampling.hpp"
#include "strobo/tomography.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace strobo {

namespace {

struct Check {
    CheckResult result;

    Check(std::string name) { result.name = std::move(name); result.passed = true; }

    // records the first failing case only
    void expect(bool ok, const std::string& detail) {
        ++result.cases;
        if (!ok && result.passed) {
            result.passed = false;
            result.detail = detail;
        }
    }
};

std::string describe_spectrum(const SpectrumDraw& draw) {
    std::ostringstream os;
    os << "lambda=(";
    for (std::size_t i = 0; i < draw.eigenvalues.size(); ++i)
        os << (i ? "," : "") << draw.eigenvalues[i];
    os << ") n=(";
    for (std::size_t i = 0; i < draw.multiplicities.size(); ++i)
        os << (i ? "," : "") << draw.multiplicities[i];
    os << ")";
    return os.str();
}

// largest multiplicity in the grouped generator spectrum: the eigenspace
// dimension predicted by pair enumeration, an oracle independent of the
// dense kernel computation
int predicted_bruteforce(const HamiltonianSpec& H) {
    int eta = 0;
    for (const auto& entry : generator_spectrum(H).entries)
        eta = std::max(eta, entry.multiplicity);
    return eta;
}

}  // namespace

std::vector<CheckResult> verify_semigroup(std::uint64_t seed) {
    std::vector<CheckResult> results;
    Rng rng(seed);

    {
        Check check("three-engine agreement and conservation laws");
        for (int trial = 0; trial < 30; ++trial) {
            const int d = rng.uniform_int(2, 6);
            const HamiltonianSpec H =
                HamiltonianSpec::from_dense(random_hermitian_scaled(rng, d));
            const QuditState rho0 = random_state(d, rng.raw());
            const double t = rng.uniform(0.0, 5.0);

            const Superoperator L = build_generator(H);
            const QuditState exact = evolve_exact(H, rho0, t);
            const QuditState via_expm = evolve_expm(L, rho0, t);
            const QuditState via_quad =
                (t > 0.0) ? evolve_quadrature(H, rho0, t, 64) : rho0;

            const double d1 = (exact.rho - via_expm.rho).norm();
            const double d2 = (exact.rho - via_quad.rho).norm();
            const double d3 = (via_expm.rho - via_quad.rho).norm();
            check.expect(d1 <= 1e-9 && d2 <= 1e-9 && d3 <= 1e-9,
                         "engine disagreement at d=" + std::to_string(d) +
                             " t=" + std::to_string(t));

            check.expect(std::abs(exact.rho.trace() - cd(1.0, 0.0)) <= 1e-12 &&
                             std::abs(via_expm.rho.trace() - cd(1.0, 0.0)) <= 1e-12 &&
                             std::abs(via_quad.rho.trace() - cd(1.0, 0.0)) <= 1e-12,
                         "trace drift");
            check.expect(validate_density(exact.rho).passed() &&
                             validate_density(via_expm.rho).passed() &&
                             validate_density(via_quad.rho).passed(),
                         "evolved state fails density validation");
        }
        results.push_back(check.result);
    }
    {
        Check check("generator is negative semidefinite and self-adjoint");
        for (int trial = 0; trial < 15; ++trial) {
            const int d = rng.uniform_int(2, 6);
            const HamiltonianSpec H =
                HamiltonianSpec::from_dense(random_hermitian_scaled(rng, d));
            const Superoperator L = build_generator(H);

            check.expect((L.matrix - L.matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-12,
                         "generator is not self-adjoint");
            Eigen::SelfAdjointEigenSolver<Matrix> es(L.matrix, Eigen::EigenvaluesOnly);
            check.expect(es.eigenvalues().maxCoeff() <= 1e-12,
                         "generator has a positive eigenvalue");
        }
        results.push_back(check.result);
    }
    {
        Check check("kernel dimension equals the sum of squared multiplicities");
        for (int trial = 0; trial < 25; ++trial) {
            const SpectrumDraw draw = random_spectrum(rng, 1, 4, 3, 8);
            const HamiltonianSpec H =
                HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
            const Superoperator L = build_generator(H);

            Eigen::JacobiSVD<Matrix> svd(L.matrix);
            const auto& sigma = svd.singularValues();
            const double scale = std::max(sigma(0), 1e-300);
            int kernel_dim = 0;
            for (Eigen::Index i = 0; i < sigma.size(); ++i)
                if (sigma(i) <= 1e-9 * scale) ++kernel_dim;
            if (sigma(0) <= 1e-14) kernel_dim = static_cast<int>(sigma.size());

            check.expect(kernel_dim == kappa(draw.multiplicities),
                         "kernel law fails for " + describe_spectrum(draw));
        }
        results.push_back(check.result);
    }
    return results;
}

std::vector<CheckResult> verify_cyclicity(std::uint64_t seed) {
    std::vector<CheckResult> results;
    Rng rng(seed);

    {
        Check check("closed form equals brute force on arithmetic spectra");
        for (int trial = 0; trial < 40; ++trial) {
            const SpectrumDraw draw = random_arithmetic_spectrum(rng, 1, 6, 3, 8);
            const HamiltonianSpec H =
                HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
            const CyclicityReport report = analyze_cyclicity(H);
            check.expect(!report.resonant, "arithmetic spectrum flagged resonant: " +
                                               describe_spectrum(draw));
            check.expect(report.eta_closed == report.eta_bruteforce,
                         "closed/brute mismatch on " + describe_spectrum(draw));
        }
        results.push_back(check.result);
    }
    {
        Check check("brute force never exceeds the closed form off resonance");
        for (int trial = 0; trial < 40; ++trial) {
            const SpectrumDraw draw = random_spectrum(rng, 1, 6, 3, 8);
            const HamiltonianSpec H =
                HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
            const CyclicityReport report = analyze_cyclicity(H);
            if (report.resonant) continue;
            check.expect(report.eta_bruteforce <= report.eta_closed,
                         "brute force exceeds closed form on " + describe_spectrum(draw));
        }
        results.push_back(check.result);
    }
    {
        Check check("dense kernel dimensions match pair-enumeration multiplicities");
        for (int trial = 0; trial < 25; ++trial) {
            const SpectrumDraw draw = random_spectrum(rng, 1, 5, 3, 7);
            const HamiltonianSpec H =
                HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
            check.expect(index_bruteforce(build_generator(H)) == predicted_bruteforce(H),
                         "kernel count disagrees with enumeration on " +
                             describe_spectrum(draw));
        }
        results.push_back(check.result);
    }
    {
        Check check("gamma_k does not exceed kappa beyond the closed-form range");
        // exhaustive over multiplicity lists, m <= 6, entries <= 4; equality
        // occurs exactly for period-k lists with m = 2k
        for (int m = 1; m <= 6; ++m) {
            std::vector<int> mult(static_cast<std::size_t>(m), 1);
            for (;;) {
                const int r = (m % 2 == 1) ? (m - 1) / 2 : (m - 2) / 2;
                const int kap = kappa(mult);
                for (int k = r + 1; k < m; ++k) {
                    int gamma_k = 0;
                    for (int i = 0; i + k < m; ++i)
                        gamma_k += 2 * mult[static_cast<std::size_t>(i)] *
                                   mult[static_cast<std::size_t>(i + k)];
                    bool periodic = (m == 2 * k);
                    for (int i = 0; periodic && i + k < m; ++i)
                        if (mult[static_cast<std::size_t>(i)] !=
                            mult[static_cast<std::size_t>(i + k)])
                            periodic = false;
                    check.expect(periodic ? (gamma_k == kap) : (gamma_k < kap),
                                 "gamma/kappa bound fails at m=" + std::to_string(m) +
                                     " k=" + std::to_string(k));
                }
                int pos = m - 1;
                while (pos >= 0 && mult[static_cast<std::size_t>(pos)] == 4) {
                    mult[static_cast<std::size_t>(pos)] = 1;
                    --pos;
                }
                if (pos < 0) break;
                ++mult[static_cast<std::size_t>(pos)];
            }
        }
        results.push_back(check.result);
    }
    {
        Check check("minimal polynomial annihilates the generator with simple roots");
        for (int trial = 0; trial < 15; ++trial) {
            const SpectrumDraw draw = random_spectrum(rng, 1, 4, 3, 7);
            const HamiltonianSpec H =
                HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
            const Superoperator L = build_generator(H);
            const MinimalPolynomial mu = minimal_polynomial(generator_spectrum(H));

            check.expect(mu.degree ==
                             static_cast<int>(generator_spectrum(H).entries.size()),
                         "degree does not match the distinct eigenvalue count");

            // evaluate L^m - sum d_k L^k by Horner
            const Eigen::Index n = L.matrix.rows();
            Matrix value = Matrix::Identity(n, n);
            for (int k = mu.degree - 1; k >= 0; --k)
                value = value * L.matrix - mu.d_coeffs(k) * Matrix::Identity(n, n);
            const double norm_l = std::max(1.0, L.matrix.norm());
            check.expect(value.norm() <= 1e-9 * std::pow(norm_l, mu.degree),
                         "polynomial residual too large for " + describe_spectrum(draw));
        }
        results.push_back(check.result);
    }
    return results;
}

std::vector<CheckResult> verify_alpha(std::uint64_t seed) {
    std::vector<CheckResult> results;
    Rng rng(seed);

    {
        Check check("polynomial flow representation matches the matrix exponential");
        for (int trial = 0; trial < 20; ++trial) {
            const HamiltonianSpec H = random_separated_hamiltonian(rng, 1, 4, 3, 5);
            const Superoperator L = build_generator(H);
            const AlphaSystem sys = AlphaSystem::from_hamiltonian(H);
            const double t = rng.uniform(0.0, 5.0);

            const Matrix target = expm(t * L.matrix);
            for (AlphaMethod method : {AlphaMethod::Interp, AlphaMethod::Ode}) {
                const RealVector alpha = alpha_at(sys, t, method);
                Matrix sum = Matrix::Zero(L.matrix.rows(), L.matrix.cols());
                Matrix power = Matrix::Identity(L.matrix.rows(), L.matrix.cols());
                for (int k = 0; k < sys.m; ++k) {
                    sum += alpha(k) * power;
                    power = power * L.matrix;
                }
                check.expect((sum - target).norm() <= 1e-9,
                             "representation residual too large (m=" +
                                 std::to_string(sys.m) + ")");
            }

            const RealVector a1 = alpha_interp(sys, t);
            const RealVector a2 = alpha_ode(sys, {t}).row(0);
            check.expect((a1 - a2).cwiseAbs().maxCoeff() <= 1e-10,
                         "interp/ode disagreement (m=" + std::to_string(sys.m) + ")");
        }
        results.push_back(check.result);
    }
    {
        Check check("grid determinant zeros are isolated with constant sign between");
        // closed-form case: det = e^{-t} - e^{-2t}, zero only at t = 0
        MinimalPolynomial mu;
        mu.degree = 2;
        mu.d_coeffs = RealVector::Zero(2);
        mu.d_coeffs(1) = -1.0;
        mu.roots = {-1.0, 0.0};
        const AlphaSystem sys = AlphaSystem::from_minimal_polynomial(mu);
        const TimeScaleSelection sel = select_time_scale(sys, {1.0, 2.0}, 10.0, 512);

        check.expect(sel.zero_locations.size() == 1 &&
                         sel.zero_locations.front() == 0.0,
                     "unexpected zero set for the closed-form case");
        check.expect(std::abs(sel.t_star - std::log(2.0)) <= 1e-6, "t_star misses ln 2");
        check.expect(std::abs(sel.det_value - 0.25) <= 1e-9, "det value misses 0.25");

        for (int i = 1; i <= 100; ++i) {
            const double t = 5.0 * i / 100.0;
            check.expect(grid_determinant(sys, {{1.0, 2.0}, t}) > 0.0,
                         "determinant changes sign away from its zeros");
        }
        results.push_back(check.result);
    }
    {
        Check check("lowest Taylor order of the grid determinant is m(m-1)/2");
        for (int m = 2; m <= 4; ++m) {
            for (int trial = 0; trial < 5; ++trial) {
                // synthetic system with m random simple roots
                SpectrumTable table;
                double root = -rng.uniform(1.5, 2.5);
                for (int i = 0; i < m; ++i) {
                    table.entries.push_back({root, 1});
                    root += rng.uniform(0.2, 0.6);
                }
                const AlphaSystem sys =
                    AlphaSystem::from_minimal_polynomial(minimal_polynomial(table));

                std::vector<double> c;
                double prev = 0.0;
                for (int j = 0; j < m; ++j) {
                    prev += rng.uniform(0.3, 1.5);
                    c.push_back(prev);
                }
                const TaylorLowestOrder low = taylor_lowest_order(sys, c);
                check.expect(low.order == m * (m - 1) / 2,
                             "order mismatch at m=" + std::to_string(m));
                check.expect(std::abs(low.coefficient) > 0.0, "vanishing coefficient");
            }
        }
        results.push_back(check.result);
    }
    return results;
}

std::vector<CheckResult> verify_tomography(std::uint64_t seed) {
    std::vector<CheckResult> results;
    Rng rng(seed);

    const auto make_scenario = [&](SpectrumDraw& draw_out, HamiltonianSpec& H_out) {
        for (;;) {
            SpectrumDraw draw = random_spectrum(rng, 1, 3, 2, 5, 0.0, 1.2, 0.1, 2);
            HamiltonianSpec H =
                HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
            if (!resonance_report(draw.eigenvalues, draw.multiplicities).resonant) {
                draw_out = std::move(draw);
                H_out = std::move(H);
                return;
            }
        }
    };

    {
        Check check("exact data round trip recovers the initial state");
        for (int trial = 0; trial < 25; ++trial) {
            SpectrumDraw draw;
            HamiltonianSpec H = HamiltonianSpec::from_spectrum({0.0}, {1});
            make_scenario(draw, H);

            const Superoperator L = build_generator(H);
            const int eta = index_bruteforce(L);
            const ObservableSet set = design_observables(L, eta, rng.raw());
            const AlphaSystem sys = AlphaSystem::from_hamiltonian(H);
            const std::vector<double> c = default_c_list(sys.m);
            const TimeScaleSelection sel = select_time_scale(sys, c, 6.0, 512);
            const TimeGrid grid{c, sel.t_star};

            const QuditState rho0 = random_state(H.dim(), rng.raw());
            const DataMatrix data = simulate_data(H, rho0, set, grid, 0.0, 0);
            const ReconstructionResult rec = reconstruct(set, grid, data, L, sys);

            check.expect((rec.rho0_estimate.rho - rho0.rho).norm() <= 1e-8,
                         "round-trip error too large on " + describe_spectrum(draw));
        }
        results.push_back(check.result);
    }
    {
        Check check("eta-1 observables never span");
        for (int trial = 0; trial < 10; ++trial) {
            SpectrumDraw draw;
            HamiltonianSpec H = HamiltonianSpec::from_spectrum({0.0}, {1});
            make_scenario(draw, H);

            const Superoperator L = build_generator(H);
            const Superoperator L_adj = adjoint_generator(L);
            const int eta = index_bruteforce(L);
            if (eta < 2) continue;
            const ObservableSet set = design_observables(L, eta, rng.raw());
            const int d2 = H.dim() * H.dim();

            // drop one designed observable at random
            ObservableSet subset = set;
            subset.observables.erase(subset.observables.begin() +
                                     rng.uniform_int(0, set.size() - 1));
            check.expect(krylov_span(L_adj, subset).rank < d2,
                         "a proper subset spans on " + describe_spectrum(draw));

            // fresh random (eta-1)-sets
            ObservableSet fresh;
            fresh.krylov_depth = set.krylov_depth;
            for (int i = 0; i + 1 < eta; ++i)
                fresh.observables.push_back(random_observable(H.dim(), rng.raw()));
            check.expect(krylov_span(L_adj, fresh).rank < d2,
                         "a random undersized set spans on " + describe_spectrum(draw));
        }
        results.push_back(check.result);
    }
    {
        Check check("reconstruction error grows with the noise level");
        const HamiltonianSpec H = HamiltonianSpec::from_spectrum({0.0, 1.0}, {1, 1});
        const Superoperator L = build_generator(H);
        const ObservableSet set = design_observables(L, index_bruteforce(L), 99);
        const AlphaSystem sys = AlphaSystem::from_hamiltonian(H);
        const std::vector<double> c = default_c_list(sys.m);
        const TimeScaleSelection sel = select_time_scale(sys, c, 6.0, 512);
        const TimeGrid grid{c, sel.t_star};
        const QuditState rho0 = random_state(2, 4242);

        std::vector<double> mean_errors;
        for (double sigma : {0.0, 1e-4, 1e-3, 1e-2}) {
            double total = 0.0;
            for (int rep = 0; rep < 20; ++rep) {
                const DataMatrix data =
                    simulate_data(H, rho0, set, grid, sigma, 1000 + rep);
                const ReconstructionResult rec = reconstruct(set, grid, data, L, sys);
                total += (rec.rho0_estimate.rho - rho0.rho).norm();
            }
            mean_errors.push_back(total / 20.0);
        }
        for (std::size_t i = 1; i < mean_errors.size(); ++i)
            check.expect(mean_errors[i] > mean_errors[i - 1],
                         "error not increasing between noise levels");
        results.push_back(check.result);
    }
    {
        Check check("spanning sets distinguish distinct states");
        for (int trial = 0; trial < 20; ++trial) {
            SpectrumDraw draw;
            HamiltonianSpec H = HamiltonianSpec::from_spectrum({0.0}, {1});
            make_scenario(draw, H);

            const Superoperator L = build_generator(H);
            const ObservableSet set = design_observables(L, index_bruteforce(L), rng.raw());
            const AlphaSystem sys = AlphaSystem::from_hamiltonian(H);
            const std::vector<double> c = default_c_list(sys.m);
            const TimeScaleSelection sel = select_time_scale(sys, c, 6.0, 512);
            const TimeGrid grid{c, sel.t_star};

            const QuditState rho1 = random_state(H.dim(), rng.raw());
            const QuditState rho2 = random_state(H.dim(), rng.raw());
            if ((rho1.rho - rho2.rho).norm() <= 1e-6) continue;

            check.expect(
                distinguishability_check(H, rho1, rho2, set, grid).distinguishable,
                "distinct states not distinguished on " + describe_spectrum(draw));
        }
        results.push_back(check.result);
    }
    return results;
}

std::vector<CheckResult> verify_suite(const std::string& suite, std::uint64_t seed) {
    if (suite == "semigroup") return verify_semigroup(seed);
    if (suite == "cyclicity") return verify_cyclicity(seed);
    if (suite == "alpha") return verify_alpha(seed);
    if (suite == "tomography") return verify_tomography(seed);
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (const auto* name : {"semigroup", "cyclicity", "alpha", "tomography"}) {
            auto part = verify_suite(name, seed);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace strobo
