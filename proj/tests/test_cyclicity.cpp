#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strobo/cyclicity.hpp"
#include "strobo/sampling.hpp"

#include "oracles.hpp"

#include <algorithm>

using namespace strobo;

TEST_CASE("kappa") {
    CHECK(kappa({1, 1, 1}) == 3);
    CHECK(kappa({2, 1}) == 5);
    CHECK(kappa({5}) == 25);
    CHECK_THROWS_AS(kappa({}), std::invalid_argument);
}

TEST_CASE("gammas") {
    CHECK(gammas({1, 1, 1}) == std::vector<int>{4});
    CHECK(gammas({1, 1}).empty());
    CHECK(gammas({3, 1, 3, 3}) == std::vector<int>{30});  // 2(3 + 3 + 9)
    CHECK(gammas({2}).empty());
    CHECK_THROWS_AS(gammas({}), std::invalid_argument);
}

TEST_CASE("index_closed_form worked values") {
    CHECK(index_closed_form({1, 1, 1}) == 4);  // max(3, 4)
    CHECK(index_closed_form({4}) == 16);       // single eigenvalue, d = 4
    CHECK(index_closed_form({1, 1}) == 2);     // empty gamma list
}

TEST_CASE("index_isolated equals kappa") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> mult;
        const int m = rng.uniform_int(1, 6);
        for (int i = 0; i < m; ++i) mult.push_back(rng.uniform_int(1, 4));
        CHECK(index_isolated(mult) == kappa(mult));
    }
}

TEST_CASE("index_bruteforce worked values") {
    SUBCASE("zero generator has a full kernel") {
        CHECK(index_bruteforce({2, Matrix::Zero(4, 4)}) == 4);
    }
    SUBCASE("equally spaced three-level system") {
        const HamiltonianSpec H = HamiltonianSpec::from_spectrum({0, 1, 2}, {1, 1, 1});
        CHECK(index_bruteforce(build_generator(H)) == 4);
    }
    SUBCASE("resonant spectrum merges two pair classes") {
        const HamiltonianSpec H =
            HamiltonianSpec::from_spectrum({0, 1, 2, 4}, {3, 1, 3, 3});
        // nu = -2 collects (1,3) and (3,4): 2*9 + 2*9 = 36
        CHECK(index_bruteforce(build_generator(H)) == 36);
    }
}

TEST_CASE("resonance_report") {
    SUBCASE("equally spaced levels are not resonant") {
        const ResonanceInfo info = resonance_report({0, 1, 2}, {1, 1, 1});
        CHECK_FALSE(info.resonant);
        CHECK(info.collisions.empty());
    }
    SUBCASE("collision between distance classes 1 and 2") {
        const ResonanceInfo info = resonance_report({0, 1, 2, 4}, {3, 1, 3, 3});
        REQUIRE(info.resonant);
        REQUIRE(info.collisions.size() == 1);
        CHECK(info.collisions[0].nu == doctest::Approx(-2.0));
        CHECK(info.collisions[0].pair_classes == std::vector<int>{1, 2});
    }
    SUBCASE("arithmetic progressions never collide across classes") {
        Rng rng(17);
        for (int trial = 0; trial < 30; ++trial) {
            const SpectrumDraw draw = random_arithmetic_spectrum(rng, 2, 6, 3, 10);
            CHECK_FALSE(resonance_report(draw.eigenvalues, draw.multiplicities).resonant);
        }
    }
    SUBCASE("eigenvalues must increase strictly") {
        CHECK_THROWS_AS(resonance_report({1, 1}, {1, 1}), std::invalid_argument);
    }
}

TEST_CASE("minimal_polynomial worked values") {
    SUBCASE("zero generator") {
        const MinimalPolynomial mu = minimal_polynomial({2, Matrix::Zero(4, 4)});
        CHECK(mu.degree == 1);
        CHECK(mu.d_coeffs(0) == 0.0);
        CHECK(mu.roots == std::vector<double>{0.0});
    }
    SUBCASE("roots 0, -1/2, -2 expand to z^3 + 2.5 z^2 + z") {
        SpectrumTable table;
        table.entries = {{-2.0, 2}, {-0.5, 4}, {0.0, 3}};
        const MinimalPolynomial mu = minimal_polynomial(table);
        REQUIRE(mu.degree == 3);
        CHECK(mu.d_coeffs(0) == doctest::Approx(0.0));
        CHECK(mu.d_coeffs(1) == doctest::Approx(-1.0));
        CHECK(mu.d_coeffs(2) == doctest::Approx(-2.5));
        for (double root : mu.roots) CHECK(std::abs(mu.eval_monic(root)) < 1e-12);
    }
    SUBCASE("two-level system gives z^2 + z/2") {
        const HamiltonianSpec H = HamiltonianSpec::from_spectrum({0, 1}, {1, 1});
        const MinimalPolynomial mu = minimal_polynomial(generator_spectrum(H));
        REQUIRE(mu.degree == 2);
        CHECK(mu.d_coeffs(0) == doctest::Approx(0.0));
        CHECK(mu.d_coeffs(1) == doctest::Approx(-0.5));
    }
    SUBCASE("degree equals the distinct eigenvalue count") {
        Rng rng(23);
        for (int trial = 0; trial < 10; ++trial) {
            const SpectrumDraw draw = random_spectrum(rng, 1, 5, 3, 7);
            const HamiltonianSpec H =
                HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
            const SpectrumTable table = generator_spectrum(H);
            const MinimalPolynomial via_matrix = minimal_polynomial(build_generator(H));
            CHECK(via_matrix.degree == static_cast<int>(table.entries.size()));
        }
    }
    SUBCASE("defective matrices are rejected") {
        Matrix jordan = Matrix::Zero(4, 4);
        jordan(0, 1) = 1.0;
        jordan(1, 2) = 1.0;
        jordan(2, 3) = 1.0;
        CHECK_THROWS_AS(minimal_polynomial({2, jordan}), std::invalid_argument);
    }
}

TEST_CASE("index_bruteforce handles non-Gaussian generators") {
    // isolated-system generator -i[H, .]: complex spectrum -i(λ_i - λ_j), and
    // for gap-distinct spectra the largest eigenspace is the zero one of
    // dimension Σ n_i² = index_isolated
    Rng rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        const SpectrumDraw draw = random_spectrum(rng, 2, 3, 2, 5);
        const HamiltonianSpec H =
            HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
        const int d = H.dim();
        const Matrix h = H.dense();
        const Matrix id = Matrix::Identity(d, d);

        Matrix commutator_action = Matrix::Zero(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l) {
                        // vec_r convention: -i (H ⊗ I - I ⊗ H^T)
                        cd value = 0.0;
                        if (j == l) value += h(i, k);
                        if (i == k) value -= h(l, j);
                        commutator_action(i * d + j, k * d + l) = cd(0, -1) * value;
                    }

        // all Hamiltonian gaps distinct for this draw?
        std::vector<double> gaps;
        bool distinct = true;
        for (std::size_t a = 0; a < draw.eigenvalues.size(); ++a)
            for (std::size_t b = a + 1; b < draw.eigenvalues.size(); ++b) {
                const double g = draw.eigenvalues[b] - draw.eigenvalues[a];
                for (double seen : gaps)
                    if (std::abs(seen - g) < 1e-6) distinct = false;
                gaps.push_back(g);
            }
        if (!distinct) continue;

        CHECK(index_bruteforce({d, commutator_action}) ==
              index_isolated(draw.multiplicities));
    }
}

TEST_CASE("brute force matches pair enumeration") {
    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const SpectrumDraw draw = random_spectrum(rng, 1, 5, 3, 7);
        const HamiltonianSpec H =
            HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
        const auto dims =
            oracles::eigenspace_dims(draw.eigenvalues, draw.multiplicities, kGroupingTol);
        const int expected = *std::max_element(dims.begin(), dims.end());
        CHECK(index_bruteforce(build_generator(H)) == expected);
    }
}

TEST_CASE("closed form equals brute force on arithmetic spectra") {
    Rng rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const SpectrumDraw draw = random_arithmetic_spectrum(rng, 1, 6, 3, 8);
        const HamiltonianSpec H =
            HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
        const CyclicityReport report = analyze_cyclicity(H);
        CHECK_FALSE(report.resonant);
        CHECK(report.eta_closed == report.eta_bruteforce);
    }
}

TEST_CASE("off resonance the closed form upper-bounds the brute force") {
    // generic spectra split the distance classes, so the closed form can
    // strictly exceed the largest actual eigenspace; (0,1,3) is the smallest
    // example: closed 4, brute force 3
    const HamiltonianSpec H = HamiltonianSpec::from_spectrum({0, 1, 3}, {1, 1, 1});
    const CyclicityReport report = analyze_cyclicity(H);
    CHECK_FALSE(report.resonant);
    CHECK(report.eta_closed == 4);
    CHECK(report.eta_bruteforce == 3);

    Rng rng(43);
    for (int trial = 0; trial < 25; ++trial) {
        const SpectrumDraw draw = random_spectrum(rng, 1, 6, 3, 8);
        const HamiltonianSpec Hr =
            HamiltonianSpec::from_spectrum(draw.eigenvalues, draw.multiplicities);
        const CyclicityReport r = analyze_cyclicity(Hr);
        if (!r.resonant) CHECK(r.eta_bruteforce <= r.eta_closed);
    }
}

TEST_CASE("analyze_cyclicity reports the resonant worked example") {
    const HamiltonianSpec H = HamiltonianSpec::from_spectrum({0, 1, 2, 4}, {3, 1, 3, 3});
    const CyclicityReport report = analyze_cyclicity(H);
    CHECK(report.kappa == 28);
    CHECK(report.gammas == std::vector<int>{30});
    CHECK(report.eta_closed == 30);
    CHECK(report.eta_bruteforce == 36);
    CHECK(report.resonant);
    REQUIRE(report.collisions.size() == 1);
    CHECK(report.collisions[0].pair_classes == std::vector<int>{1, 2});
}
