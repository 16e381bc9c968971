#include "qutrit/validate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qutrit/evolution.hpp"
#include "qutrit/lindblad.hpp"
#include "qutrit/specs.hpp"
#include "qutrit/states.hpp"

namespace qutrit {

namespace {

class Suite {
public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string& what) {
        if (ok) {
            ++result_.passed;
        } else {
            ++result_.failed;
            if (result_.first_failure.empty()) result_.first_failure = what;
        }
    }

    void check_near(double actual, double expected, double tol, const std::string& what) {
        std::ostringstream msg;
        msg << what << ": got " << actual << ", expected " << expected << " (tol " << tol << ")";
        check(std::abs(actual - expected) <= tol, msg.str());
    }

    SuiteResult take() { return std::move(result_); }

private:
    SuiteResult result_;
};

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix g = random_matrix(n, rng);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

SuiteResult suite_linalg(std::mt19937_64& rng) {
    Suite suite("linalg");
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix m = random_matrix(9, rng);
        const ComplexMatrix twice = partial_transpose_A(partial_transpose_A(m));
        suite.check((twice - m).max_abs() == 0.0, "partial transpose is not an involution");
        suite.check(std::abs(partial_transpose_A(m).trace() - m.trace()) <= 1e-12,
                    "partial transpose changed the trace");
    }
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix h = random_hermitian(9, rng);
        suite.check(partial_transpose_A(h).hermiticity_defect() == 0.0,
                    "partial transpose broke hermiticity");
        const auto eig = hermitian_eigen(h);
        double sum = 0.0;
        for (double lambda : eig.eigenvalues) sum += lambda;
        suite.check(std::abs(sum - h.trace().real()) <= 1e-12,
                    "eigenvalue sum does not match trace");
        double residual = 0.0;
        for (std::size_t k = 0; k < 9; ++k) {
            ComplexVector v(9);
            for (std::size_t i = 0; i < 9; ++i) v[i] = eig.eigenvectors(i, k);
            const ComplexVector hv = matvec(h, v);
            for (std::size_t i = 0; i < 9; ++i)
                residual = std::max(residual, std::abs(hv[i] - eig.eigenvalues[k] * v[i]));
        }
        suite.check(residual <= 1e-10 * h.max_abs(), "eigenpair residual too large");
    }
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = random_matrix(3, rng), b = random_matrix(3, rng);
        const ComplexMatrix c = random_matrix(3, rng), d = random_matrix(3, rng);
        const ComplexMatrix lhs = kron(a, b) * kron(c, d);
        const ComplexMatrix rhs = kron(a * c, b * d);
        suite.check((lhs - rhs).max_abs() <= 1e-12, "kron mixed-product identity failed");
    }
    return suite.take();
}

SuiteResult suite_negativity(std::mt19937_64& rng) {
    Suite suite("negativity");
    const double half_pi = std::numbers::pi / 2.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 10; ++j) {
            const PureStateParams params{half_pi * i / 19.0, half_pi * j / 9.0};
            const double closed = negativity_pure_closed_form(params);
            const double eig = negativity(DensityMatrix::from_pure(pure_state(params)));
            std::ostringstream what;
            what << "pure closed form mismatch at theta=" << params.theta
                 << " phi=" << params.phi;
            suite.check(std::abs(closed - eig) <= 1e-10, what.str());
        }
    for (int k = 0; k <= 10; ++k) {
        const IsotropicParams params{k / 10.0};
        suite.check_near(negativity(isotropic_state(params)),
                         negativity_isotropic_closed_form(params), 1e-10,
                         "isotropic closed form mismatch at p=" + std::to_string(params.p));
    }
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho = random_density_matrix(9, rng);
        const ComplexMatrix u = kron(random_unitary(3, rng), random_unitary(3, rng));
        const DensityMatrix rotated =
            DensityMatrix::unchecked(u * rho.body() * u.adjoint());
        suite.check(std::abs(negativity(rho) - negativity(rotated)) <= 1e-10,
                    "negativity not invariant under local unitaries");
    }
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix a = random_density_matrix(3, rng);
        const DensityMatrix b = random_density_matrix(3, rng);
        const DensityMatrix product = DensityMatrix::unchecked(kron(a.body(), b.body()));
        suite.check(negativity(product) == 0.0, "product state with nonzero negativity");
    }
    return suite.take();
}

SuiteResult suite_lindblad(std::mt19937_64& rng) {
    Suite suite("lindblad");
    const auto genI = generator_system_I({1.0, 0.8, 0.7}, 2);
    const auto genII = generator_system_II({1.0, 0.25}, 2);
    for (const auto* gen : {&genI, &genII}) {
        double worst = 0.0;
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 9; ++j)
                worst = std::max(
                    worst, std::abs(gen->apply(ComplexMatrix::unit(9, i, j)).trace()));
        suite.check(worst <= 1e-13, "generator does not annihilate trace on matrix units");
        const ComplexMatrix h = random_hermitian(9, rng);
        suite.check(gen->apply(h).hermiticity_defect() <= 1e-13,
                    "generator broke hermiticity");
    }
    bool rejected = false;
    try {
        generator_system_I({1.0, 0.9, 1.2}, 1);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    suite.check(rejected, "betaI > 1 was not rejected");
    suite.check(SystemIIParams{1.0, 0.0}.betaII() == 1.0, "betaII != 1 at gu=0");
    suite.check(SystemIIParams{1.0, 0.3}.betaII() < 1.0, "betaII = 1 with gu>0");
    for (int rep = 0; rep < 5; ++rep) {
        const DensityMatrix a = random_density_matrix(3, rng);
        const DensityMatrix b = random_density_matrix(3, rng);
        const auto single = generator_system_I({1.0, 0.8, 0.7}, 1);
        const ComplexMatrix lhs = genI.apply(kron(a.body(), b.body()));
        const ComplexMatrix rhs = kron(single.apply(a.body()), b.body()) +
                                  kron(a.body(), single.apply(b.body()));
        suite.check((lhs - rhs).max_abs() <= 1e-12,
                    "two-atom generator is not a sum of independent lifts");
    }
    suite.check(superoperator_null_space_dimension(genII) == 1,
                "system II with gu>0 should have a unique stationary state");
    suite.check(superoperator_null_space_dimension(generator_system_II({1.0, 0.0}, 2)) > 1,
                "system II with gu=0 should be non-ergodic");
    return suite.take();
}

SuiteResult suite_evolution(std::mt19937_64& rng) {
    Suite suite("evolution");
    const SystemIIParams params{1.0, 0.25};
    const auto gen = generator_system_II(params, 2);
    const DensityMatrix psi = DensityMatrix::from_pure(psi_max());
    IntegratorSettings settings;
    settings.t_end = 5.0;
    settings.sample_every = 100;
    const Trajectory traj = evolve_rk4(gen, psi, settings);
    double worst_elem = 0.0, worst_neg = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const DensityMatrix exact = analytic_II_general(psi, params, traj.times[k]);
        worst_elem = std::max(worst_elem, (exact.body() - traj.states[k].body()).max_abs());
        worst_neg = std::max(worst_neg,
                             std::abs(traj.negativities[k] -
                                      negativity_psimax_closed_form(params, traj.times[k])));
    }
    suite.check(worst_elem <= 1e-6, "RK4 deviates from the exact propagator");
    suite.check(worst_neg <= 1e-6, "RK4 negativity deviates from the closed form");

    // monotone interference: closed-form N(t) decreases with gu
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        double prev = 2.0;
        bool monotone = true;
        for (double gu : {0.0, 0.1, 0.25, 0.5, 1.0}) {
            const double n = negativity_psimax_closed_form({1.0, gu}, t);
            if (n > prev + 1e-12) monotone = false;
            prev = n;
        }
        suite.check(monotone, "N(t) not decreasing in gu at t=" + std::to_string(t));
    }

    const double half_pi = std::numbers::pi / 2.0;
    for (int i = 0; i < 15; ++i)
        for (int j = 0; j < 15; ++j) {
            const PureStateParams p{half_pi * i / 14.0, half_pi * j / 14.0};
            const auto as =
                asymptotic_state_max_interference(DensityMatrix::from_pure(pure_state(p)));
            suite.check(std::abs(negativity(as) - asymptotic_negativity_pure(p)) <= 1e-10,
                        "asymptotic negativity closed form mismatch");
            suite.check(asymptotic_negativity_pure(p) <=
                            negativity_pure_closed_form(p) + 1e-12,
                        "asymptotic negativity exceeds the initial one");
        }
    for (int k = 0; k <= 10; ++k) {
        const double p = k / 10.0;
        const auto as = asymptotic_isotropic(p);
        suite.check_near(negativity(as.state), as.negativity, 1e-10,
                         "isotropic asymptotic negativity mismatch at p=" + std::to_string(p));
        const auto mapped = asymptotic_state_max_interference(isotropic_state({p}));
        suite.check((mapped.body() - as.state.body()).max_abs() <= 1e-12,
                    "asymptotic map disagrees with the isotropic closed form");
    }

    // random states stay physical and reach the asymptotic map at gu=0
    const auto gen_max = generator_system_II({1.0, 0.0}, 2);
    IntegratorSettings long_run;
    long_run.dt = 0.01;
    long_run.t_end = 50.0;
    long_run.sample_every = 100;
    for (int rep = 0; rep < 3; ++rep) {
        const DensityMatrix rho0 = random_density_matrix(9, rng);
        const Trajectory t2 = evolve_rk4(gen_max, rho0, long_run);
        const auto as = asymptotic_state_max_interference(rho0);
        suite.check((t2.final_state().body() - as.body()).max_abs() <= 1e-4,
                    "long-time state disagrees with the asymptotic map");
    }
    return suite.take();
}

}  // namespace

std::vector<SuiteResult> run_validation_suites(std::uint64_t seed, const std::string& filter) {
    std::mt19937_64 rng(seed);
    std::vector<SuiteResult> results;
    auto want = [&](const std::string& name) { return filter.empty() || filter == name; };
    if (want("linalg")) results.push_back(suite_linalg(rng));
    if (want("negativity")) results.push_back(suite_negativity(rng));
    if (want("lindblad")) results.push_back(suite_lindblad(rng));
    if (want("evolution")) results.push_back(suite_evolution(rng));
    if (results.empty()) throw ParseError("unknown suite '" + filter + "'");
    return results;
}

}  // namespace qutrit
