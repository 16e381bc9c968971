#include <doctest.h>

#include <cmath>
#include <random>

#include "qutrit/lindblad.hpp"
#include "qutrit/states.hpp"

using namespace qutrit;

namespace {

ComplexMatrix ket_bra(int j, int k) { return transition_operator(j, k); }

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return ComplexMatrix(0.5 * (g + g.adjoint()));
}

}  // namespace

TEST_CASE("system I without interference is pure amplitude damping") {
    const auto gen = generator_system_I({1.0, 1.0, 0.0}, 1);
    const ComplexMatrix image = gen.apply(ket_bra(1, 1));
    CHECK((image - (ket_bra(3, 3) - ket_bra(1, 1))).max_abs() <= 1e-15);
}

TEST_CASE("system I cross terms act on the excited coherence") {
    // hand expansion of the damping term on sigma_12, gamma12 = 1
    const auto gen = generator_system_I({1.0, 1.0, 1.0}, 1);
    const ComplexMatrix image = gen.apply(ket_bra(1, 2));
    ComplexMatrix expected = ket_bra(3, 3) - ket_bra(1, 2);
    expected -= ComplexMatrix(0.5 * (ket_bra(1, 1) + ket_bra(2, 2)));
    CHECK((image - expected).max_abs() <= 1e-15);
    CHECK(std::abs(image.trace()) <= 1e-15);
}

TEST_CASE("ground state is dark for both systems") {
    const ComplexMatrix gg = kron(ket_bra(3, 3), ket_bra(3, 3));
    CHECK(generator_system_I({1.0, 0.8, 0.5}, 2).apply(gg).max_abs() <= 1e-15);
    CHECK(generator_system_II({1.0, 0.25}, 2).apply(gg).max_abs() <= 1e-15);
}

TEST_CASE("system II single-atom action") {
    SUBCASE("metastable u level does not decay") {
        const auto gen = generator_system_II({1.0, 0.0}, 1);
        CHECK(gen.apply(ket_bra(2, 2)).max_abs() <= 1e-15);
    }
    SUBCASE("excited e population damps to the ground state") {
        const auto gen = generator_system_II({1.0, 0.7}, 1);
        const ComplexMatrix image = gen.apply(ket_bra(1, 1));
        CHECK((image - (ket_bra(3, 3) - ket_bra(1, 1))).max_abs() <= 1e-15);
    }
    SUBCASE("e-u coherence decays at (ge+gu)/2") {
        const auto gen = generator_system_II({1.0, 0.5}, 1);
        const ComplexMatrix image = gen.apply(ket_bra(1, 2));
        CHECK((image - ComplexMatrix(-0.75 * ket_bra(1, 2))).max_abs() <= 1e-15);
    }
}

TEST_CASE("rate of the maximally entangled 11-element matches the exact solution") {
    // d/dt rho_11 = -2 ge rho_11 at t=0
    const auto gen = generator_system_II({1.0, 0.5}, 2);
    const ComplexMatrix image = gen.apply(outer(psi_max(), psi_max()));
    CHECK(image(0, 0).real() == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(image(0, 0).imag() == doctest::Approx(0.0));
}

TEST_CASE("generator linearity") {
    std::mt19937_64 rng(77);
    const auto gen = generator_system_I({1.0, 0.6, 0.4}, 2);
    const ComplexMatrix r1 = random_hermitian(9, rng), r2 = random_hermitian(9, rng);
    const Complex a(0.7, 0.0), b(-1.3, 0.0);
    const ComplexMatrix lhs = gen.apply(a * r1 + b * r2);
    const ComplexMatrix rhs = a * gen.apply(r1) + b * gen.apply(r2);
    CHECK((lhs - rhs).max_abs() <= 1e-12);
}

TEST_CASE("trace annihilation on every matrix unit") {
    for (const auto& gen : {generator_system_I({1.0, 0.8, 0.9}, 2),
                            generator_system_II({1.0, 0.3}, 2)}) {
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 9; ++j)
                CHECK(std::abs(gen.apply(ComplexMatrix::unit(9, i, j)).trace()) <= 1e-13);
    }
}

TEST_CASE("hermiticity preservation") {
    std::mt19937_64 rng(13);
    const auto gen = generator_system_I({1.0, 0.5, 1.0}, 2);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix h = random_hermitian(9, rng);
        CHECK(gen.apply(h).hermiticity_defect() <= 1e-13);
        const ComplexMatrix g = random_hermitian(9, rng) +
                                ComplexMatrix(Complex(0, 1) * random_hermitian(9, rng));
        CHECK((gen.apply(g).adjoint() - gen.apply(g.adjoint())).max_abs() <= 1e-13);
    }
}

TEST_CASE("complete positivity gate") {
    CHECK_THROWS_AS(generator_system_I({1.0, 1.0, 1.2}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generator_system_I({1.0, 1.0, -0.1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generator_system_II({-1.0, 0.5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generator_system_II({0.0, 0.0}, 1), std::invalid_argument);

    // at betaI = 1 the damping matrix [[g1, g12],[g12, g2]] is rank one
    const SystemIParams boundary{2.0, 3.0, 1.0};
    const double g12 = boundary.gamma12();
    const double trace = boundary.gamma1 + boundary.gamma2;
    const double det = boundary.gamma1 * boundary.gamma2 - g12 * g12;
    CHECK(det == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(trace == doctest::Approx(5.0));
}

TEST_CASE("betaII is maximal exactly when u is metastable") {
    CHECK(SystemIIParams{1.0, 0.0}.betaII() == 1.0);
    CHECK(SystemIIParams{2.5, 0.0}.betaII() == 1.0);
    CHECK(SystemIIParams{1.0, 1e-6}.betaII() < 1.0);
    CHECK(SystemIIParams{1.0, 1.0}.betaII() == 0.0);
}

TEST_CASE("two-atom generator acts independently on product states") {
    std::mt19937_64 rng(55);
    const SystemIIParams params{1.0, 0.4};
    const auto one = generator_system_II(params, 1);
    const auto two = generator_system_II(params, 2);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix a = random_density_matrix(3, rng);
        const DensityMatrix b = random_density_matrix(3, rng);
        const ComplexMatrix lhs = two.apply(kron(a.body(), b.body()));
        const ComplexMatrix rhs =
            kron(one.apply(a.body()), b.body()) + kron(a.body(), one.apply(b.body()));
        CHECK((lhs - rhs).max_abs() <= 1e-12);
    }
}

TEST_CASE("superoperator matrix is consistent with apply") {
    std::mt19937_64 rng(99);
    const auto gen = generator_system_I({1.0, 0.7, 0.8}, 2);
    const ComplexMatrix s = gen.superoperator_matrix();
    const ComplexMatrix rho = random_hermitian(9, rng);
    ComplexVector v(81);
    for (std::size_t j = 0; j < 9; ++j)
        for (std::size_t i = 0; i < 9; ++i) v[i + 9 * j] = rho(i, j);
    const ComplexVector sv = matvec(s, v);
    const ComplexMatrix image = gen.apply(rho);
    for (std::size_t j = 0; j < 9; ++j)
        for (std::size_t i = 0; i < 9; ++i)
            CHECK(std::abs(sv[i + 9 * j] - image(i, j)) <= 1e-12);
}

TEST_CASE("superoperator of the trivial generator vanishes") {
    const LindbladGenerator gen(3, {});
    CHECK(gen.superoperator_matrix().max_abs() == 0.0);
}

TEST_CASE("null space dimension separates ergodic and non-ergodic dynamics") {
    CHECK(superoperator_null_space_dimension(generator_system_II({1.0, 0.5}, 2)) == 1);
    CHECK(superoperator_null_space_dimension(generator_system_II({1.0, 0.0}, 2)) > 1);
}

TEST_CASE("stationary state of the ergodic case is the ground projector") {
    const auto gen = generator_system_II({1.0, 0.5}, 2);
    const ComplexMatrix gg = kron(ket_bra(3, 3), ket_bra(3, 3));
    CHECK(gen.apply(gg).max_abs() <= 1e-12);
}

TEST_CASE("optional diagonal Hamiltonian dresses coherences but not populations") {
    const auto gen = generator_system_II({1.0, 0.5}, 1, LevelShifts{2.0, 1.0});
    const ComplexMatrix image = gen.apply(ket_bra(1, 2));
    // -i(w1 - w2) phase on top of the (ge+gu)/2 decay
    CHECK(image(0, 1).real() == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(image(0, 1).imag() == doctest::Approx(-1.0).epsilon(1e-14));
    const ComplexMatrix pop = gen.apply(ket_bra(1, 1));
    CHECK((pop - (ket_bra(3, 3) - ket_bra(1, 1))).max_abs() <= 1e-15);
}
