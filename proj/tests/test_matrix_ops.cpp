#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strobo/matrix_ops.hpp"
#include "strobo/rng.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"

using namespace strobo;

TEST_CASE("hs_inner on Pauli matrices") {
    const Matrix id = Matrix::Identity(2, 2);
    CHECK(hs_inner(id, id) == cd(2.0, 0.0));
    CHECK(std::abs(hs_inner(oracles::pauli_x(), oracles::pauli_y())) == 0.0);
    CHECK(hs_inner(oracles::pauli_x(), oracles::pauli_x()) == cd(2.0, 0.0));
}

TEST_CASE("hs_inner is conjugate-linear in the first argument") {
    Rng rng(7);
    const Matrix a = rng.gaussian_matrix(3, 3);
    const Matrix b = rng.gaussian_matrix(3, 3);
    const cd z(0.3, -1.2);
    CHECK(std::abs(hs_inner(z * a, b) - std::conj(z) * hs_inner(a, b)) < 1e-12);
    CHECK(std::abs(hs_inner(a, z * b) - z * hs_inner(a, b)) < 1e-12);

    const cd self = hs_inner(a, a);
    CHECK(self.imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(self.real() >= 0.0);
    CHECK(self.real() == doctest::Approx(a.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("hs_inner rejects mismatched dimensions") {
    CHECK_THROWS_AS(hs_inner(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                    DimensionError);
}

TEST_CASE("vectorize uses the row-major convention") {
    Matrix e12 = Matrix::Zero(2, 2);
    e12(0, 1) = 1.0;
    const Vector v = vectorize(e12);
    CHECK(v(0) == cd(0, 0));
    CHECK(v(1) == cd(1, 0));
    CHECK(v(2) == cd(0, 0));
    CHECK(v(3) == cd(0, 0));
}

TEST_CASE("devectorize inverts vectorize") {
    Rng rng(11);
    const Matrix x = rng.gaussian_matrix(3, 3);
    CHECK((devectorize(vectorize(x)) - x).norm() == 0.0);
    CHECK(vectorize(x).squaredNorm() ==
          doctest::Approx(hs_inner(x, x).real()).epsilon(1e-13));
    CHECK_THROWS_AS(devectorize(Vector::Zero(5)), DimensionError);
}

TEST_CASE("vec(A X B) equals (A kron B^T) vec(X)") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix a = rng.gaussian_matrix(3, 3);
        const Matrix b = rng.gaussian_matrix(3, 3);
        const Matrix x = rng.gaussian_matrix(3, 3);
        const Vector lhs = Eigen::kroneckerProduct(a, b.transpose()) * vectorize(x);
        const Matrix recovered = devectorize(lhs);
        CHECK((recovered - a * x * b).norm() < 1e-12);
    }
}

TEST_CASE("hermitian_basis for d = 2 is the normalized Pauli set") {
    const auto basis = hermitian_basis(2);
    REQUIRE(basis.size() == 4);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK((basis[0].op - s * Matrix::Identity(2, 2)).norm() < 1e-15);
    CHECK((basis[1].op - s * oracles::pauli_x()).norm() < 1e-15);
    CHECK((basis[2].op - s * oracles::pauli_y()).norm() < 1e-15);
    CHECK((basis[3].op - s * oracles::pauli_z()).norm() < 1e-15);
}

TEST_CASE("hermitian_basis is orthonormal and complete") {
    for (int d = 2; d <= 5; ++d) {
        const auto basis = hermitian_basis(d);
        REQUIRE(static_cast<int>(basis.size()) == d * d);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            CHECK(hermiticity_defect(basis[i].op) < 1e-15);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const cd inner = hs_inner(basis[i].op, basis[j].op);
                CHECK(std::abs(inner - (i == j ? cd(1, 0) : cd(0, 0))) < 1e-14);
            }
        }
        // expansion of a random Hermitian in the basis
        const Observable x = random_observable(d, 1000 + static_cast<unsigned>(d));
        Matrix sum = Matrix::Zero(d, d);
        for (const auto& b : basis) sum += hs_inner(b.op, x.op).real() * b.op;
        CHECK((sum - x.op).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("validate_density classifies the worked examples") {
    CHECK(validate_density(0.5 * Matrix::Identity(2, 2)).passed());

    Matrix pure = Matrix::Zero(2, 2);
    pure(0, 0) = 1.0;
    CHECK(validate_density(pure).passed());

    Matrix bad(2, 2);
    bad << 0.5, 0.6, 0.6, 0.5;  // eigenvalues 0.5 ± 0.6
    const ValidationReport report = validate_density(bad);
    CHECK_FALSE(report.passed());
    CHECK(report.min_eigenvalue == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("random generation is deterministic and valid") {
    const QuditState s1 = random_state(4, 99);
    const QuditState s2 = random_state(4, 99);
    CHECK((s1.rho - s2.rho).norm() == 0.0);
    CHECK(validate_density(s1.rho).passed());

    const Observable q1 = random_observable(3, 5);
    const Observable q2 = random_observable(3, 5);
    CHECK((q1.op - q2.op).norm() == 0.0);
    CHECK(hermiticity_defect(q1.op) == 0.0);

    CHECK((random_state(4, 99).rho - random_state(4, 100).rho).norm() > 1e-3);
}
