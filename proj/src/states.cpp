#include "qutrit/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qutrit {

namespace {
constexpr double kClamp = 1e-10;  // eigenvalues in (-kClamp, 0) count as 0
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix body) {
    return DensityMatrix(std::move(body), Unchecked{});
}

DensityMatrix::DensityMatrix(ComplexMatrix body) : body_(std::move(body)) {
    const auto diag = validate_state(body_);
    if (!diag.pass)
        throw std::invalid_argument(
            "DensityMatrix: invariant breach (hermiticity " +
            std::to_string(diag.hermiticity_defect) + ", trace defect " +
            std::to_string(diag.trace_defect) + ", min eigenvalue " +
            std::to_string(diag.min_eigenvalue) + ")");
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi) {
    double norm2 = 0.0;
    for (const auto& z : psi) norm2 += std::norm(z);
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("from_pure: state vector not normalized");
    return unchecked(outer(psi, psi));
}

StateDiagnostics validate_state(const ComplexMatrix& rho) {
    StateDiagnostics d;
    if (rho.rows() != rho.cols()) {
        d.pass = false;
        return d;
    }
    d.hermiticity_defect = rho.hermiticity_defect();
    d.trace_defect = std::abs(rho.trace() - Complex{1.0});
    if (d.hermiticity_defect > DensityMatrix::kTol) {
        d.pass = false;
        return d;
    }
    const auto eigs = hermitian_eigenvalues(rho, 10 * DensityMatrix::kTol);
    d.min_eigenvalue = eigs.front();
    d.pass = d.trace_defect <= DensityMatrix::kTol &&
             d.min_eigenvalue >= -DensityMatrix::kTol;
    return d;
}

ComplexVector pure_state(const PureStateParams& params) {
    const double half_pi = std::numbers::pi / 2.0;
    if (params.theta < 0.0 || params.theta > half_pi ||
        params.phi < 0.0 || params.phi > half_pi)
        throw std::invalid_argument("pure_state: angles must lie in [0, pi/2]");
    ComplexVector psi(9, Complex{});
    psi[0] = std::cos(params.theta) * std::sin(params.phi);  // e1⊗e1
    psi[4] = std::sin(params.theta) * std::sin(params.phi);  // e2⊗e2
    psi[8] = std::cos(params.phi);                           // e3⊗e3
    return psi;
}

ComplexVector psi_max() {
    return pure_state({std::numbers::pi / 4.0, std::acos(1.0 / std::sqrt(3.0))});
}

DensityMatrix isotropic_state(const IsotropicParams& params) {
    if (params.p < 0.0 || params.p > 1.0)
        throw std::invalid_argument("isotropic_state: p must lie in [0,1]");
    ComplexMatrix w = outer(psi_max(), psi_max());
    w *= params.p;
    const double uniform = (1.0 - params.p) / 9.0;
    for (std::size_t i = 0; i < 9; ++i) w(i, i) += uniform;
    return DensityMatrix::unchecked(std::move(w));
}

double negativity(const DensityMatrix& rho) {
    if (rho.dimension() != 9)
        throw std::invalid_argument("negativity: expected a two-atom 9x9 state");
    const auto eigs = hermitian_eigenvalues(partial_transpose_A(rho.body()));
    double neg_sum = 0.0;
    double trace_norm = 0.0;
    for (double lambda : eigs) {
        trace_norm += std::abs(lambda);
        if (lambda < -kClamp) neg_sum += -lambda;
    }
    const double via_norm = 0.5 * (trace_norm - 1.0);
    if (std::abs(via_norm - neg_sum) > 1e-12 + 9 * kClamp)
        throw std::runtime_error("negativity: trace-norm and eigenvalue routes disagree");
    return neg_sum;
}

double negativity_pure_closed_form(const PureStateParams& p) {
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    const double cf = std::cos(p.phi), sf = std::sin(p.phi);
    return ct * sf * cf + ct * st * sf * sf + st * cf * sf;
}

double negativity_isotropic_closed_form(const IsotropicParams& params) {
    if (params.p < 0.0 || params.p > 1.0)
        throw std::invalid_argument("negativity_isotropic_closed_form: p must lie in [0,1]");
    return params.p <= 0.25 ? 0.0 : (4.0 * params.p - 1.0) / 3.0;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));

    // modified Gram-Schmidt QR, columns of Q
    ComplexMatrix q = g;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
        norm = std::sqrt(norm);
        // phase-normalize against R's diagonal so the distribution is Haar
        Complex phase = q(j, j) / std::abs(q(j, j));
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm * phase;
    }
    return q;
}

DensityMatrix random_density_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return DensityMatrix::unchecked(std::move(rho));
}

}  // namespace qutrit
