#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qutrit/states.hpp"

using namespace qutrit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("pure state family") {
    SUBCASE("psi_max at theta=pi/4, phi=arccos(1/sqrt(3))") {
        const ComplexVector psi = pure_state({kPi / 4.0, std::acos(1.0 / std::sqrt(3.0))});
        const double amp = 1.0 / std::sqrt(3.0);
        for (std::size_t k = 0; k < 9; ++k) {
            const double expected = (k == 0 || k == 4 || k == 8) ? amp : 0.0;
            CHECK(std::abs(psi[k] - expected) <= 1e-15);
        }
    }
    SUBCASE("phi=0 gives the ground product state for any theta") {
        const ComplexVector psi = pure_state({1.1, 0.0});
        for (std::size_t k = 0; k < 8; ++k) CHECK(psi[k] == Complex{});
        CHECK(psi[8] == Complex{1.0});
    }
    SUBCASE("theta=pi/2, phi=pi/4") {
        const ComplexVector psi = pure_state({kPi / 2.0, kPi / 4.0});
        CHECK(std::abs(psi[0]) <= 1e-16);
        CHECK(std::abs(psi[4] - 1.0 / std::sqrt(2.0)) <= 1e-15);
        CHECK(std::abs(psi[8] - 1.0 / std::sqrt(2.0)) <= 1e-15);
    }
    SUBCASE("unit norm across the parameter range") {
        for (int i = 0; i <= 10; ++i)
            for (int j = 0; j <= 10; ++j) {
                double norm2 = 0.0;
                for (const auto& z : pure_state({kPi / 2.0 * i / 10.0, kPi / 2.0 * j / 10.0}))
                    norm2 += std::norm(z);
                CHECK(std::abs(norm2 - 1.0) <= 1e-12);
            }
    }
    SUBCASE("out-of-range angles rejected") {
        CHECK_THROWS_AS(pure_state({-0.1, 0.3}), std::invalid_argument);
        CHECK_THROWS_AS(pure_state({0.3, kPi}), std::invalid_argument);
    }
}

TEST_CASE("isotropic state family") {
    SUBCASE("p=0 is maximally mixed") {
        const DensityMatrix w = isotropic_state({0.0});
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 9; ++j)
                CHECK(std::abs(w(i, j) - (i == j ? 1.0 / 9.0 : 0.0)) <= 1e-16);
    }
    SUBCASE("p=1 is the maximally entangled projector") {
        const DensityMatrix w = isotropic_state({1.0});
        CHECK((w.body() - outer(psi_max(), psi_max())).max_abs() <= 1e-15);
    }
    SUBCASE("p=3/4 explicit entries") {
        const DensityMatrix w = isotropic_state({0.75});
        for (std::size_t k : {0, 4, 8})
            CHECK(std::abs(w(k, k) - 10.0 / 36.0) <= 1e-15);
        for (std::size_t k : {1, 2, 3, 5, 6, 7})
            CHECK(std::abs(w(k, k) - 1.0 / 36.0) <= 1e-15);
        CHECK(std::abs(w(0, 4) - 0.25) <= 1e-15);
        CHECK(std::abs(w(0, 8) - 0.25) <= 1e-15);
        CHECK(std::abs(w(4, 8) - 0.25) <= 1e-15);
        CHECK(std::abs(w(4, 0) - 0.25) <= 1e-15);
    }
    SUBCASE("p out of range rejected") {
        CHECK_THROWS_AS(isotropic_state({-0.01}), std::invalid_argument);
        CHECK_THROWS_AS(isotropic_state({1.01}), std::invalid_argument);
    }
}

TEST_CASE("negativity of reference states") {
    CHECK(negativity(DensityMatrix::from_pure(psi_max())) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(negativity(isotropic_state({0.0})) == 0.0);
    CHECK(negativity(isotropic_state({0.75})) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("closed-form negativities") {
    CHECK(negativity_pure_closed_form({kPi / 4.0, std::acos(1.0 / std::sqrt(3.0))}) ==
          doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 0; j <= 10; ++j) {
        const double phi = kPi / 2.0 * j / 10.0;
        CHECK(negativity_pure_closed_form({0.0, phi}) ==
              doctest::Approx(std::sin(phi) * std::cos(phi)).epsilon(1e-14));
    }
    const PureStateParams sample{kPi / 8.0, kPi / 6.0};
    CHECK(negativity(DensityMatrix::from_pure(pure_state(sample))) ==
          doctest::Approx(negativity_pure_closed_form(sample)).epsilon(1e-12));

    CHECK(negativity_isotropic_closed_form({0.25}) == 0.0);
    CHECK(negativity_isotropic_closed_form({1.0}) == doctest::Approx(1.0));
    CHECK(negativity_isotropic_closed_form({0.75}) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("closed form matches the eigensolver across the parameter grids") {
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 10; ++j) {
            const PureStateParams p{kPi / 2.0 * i / 19.0, kPi / 2.0 * j / 9.0};
            CHECK(std::abs(negativity(DensityMatrix::from_pure(pure_state(p))) -
                           negativity_pure_closed_form(p)) <= 1e-10);
        }
    for (int k = 0; k <= 10; ++k) {
        const IsotropicParams p{k / 10.0};
        CHECK(std::abs(negativity(isotropic_state(p)) -
                       negativity_isotropic_closed_form(p)) <= 1e-10);
    }
}

TEST_CASE("negativity is invariant under local unitaries") {
    std::mt19937_64 rng(123);
    for (int rep = 0; rep < 15; ++rep) {
        const DensityMatrix rho = random_density_matrix(9, rng);
        const ComplexMatrix u = kron(random_unitary(3, rng), random_unitary(3, rng));
        const DensityMatrix rotated = DensityMatrix::unchecked(u * rho.body() * u.adjoint());
        CHECK(std::abs(negativity(rho) - negativity(rotated)) <= 1e-10);
    }
}

TEST_CASE("product states carry no negativity") {
    std::mt19937_64 rng(321);
    for (int rep = 0; rep < 15; ++rep) {
        const DensityMatrix a = random_density_matrix(3, rng);
        const DensityMatrix b = random_density_matrix(3, rng);
        CHECK(negativity(DensityMatrix::unchecked(kron(a.body(), b.body()))) == 0.0);
    }
}

TEST_CASE("validate_state diagnostics") {
    const auto good = validate_state(isotropic_state({0.0}).body());
    CHECK(good.pass);
    CHECK(good.hermiticity_defect == 0.0);
    CHECK(good.trace_defect <= 1e-15);

    ComplexMatrix bad(9, 9);
    bad(0, 0) = 1.0;
    bad(1, 1) = -0.001;
    bad(2, 2) = 0.001;
    const auto diag = validate_state(bad);
    CHECK_FALSE(diag.pass);
    CHECK(diag.min_eigenvalue == doctest::Approx(-0.001));
    CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);
}

TEST_CASE("random unitaries are unitary") {
    std::mt19937_64 rng(9);
    for (std::size_t n : {3, 9}) {
        const ComplexMatrix u = random_unitary(n, rng);
        CHECK((u.adjoint() * u - ComplexMatrix::identity(n)).max_abs() <= 1e-12);
    }
}
