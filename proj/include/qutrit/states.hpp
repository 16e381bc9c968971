#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "qutrit/linalg.hpp"

namespace qutrit {

struct StateDiagnostics {
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    bool pass = false;
};

// Unit-trace, Hermitian, PSD state on C^3 or C^3 x C^3.
class DensityMatrix {
public:
    static constexpr double kTol = 1e-9;

    // Validates Hermiticity, trace and positivity; throws on breach.
    explicit DensityMatrix(ComplexMatrix body);

    static DensityMatrix from_pure(const ComplexVector& psi);
    // Skips the eigen check, for hot paths whose inputs are valid by
    // construction (closed-form propagators, convex mixtures).
    static DensityMatrix unchecked(ComplexMatrix body);

    const ComplexMatrix& body() const { return body_; }
    std::size_t dimension() const { return body_.rows(); }
    const Complex& operator()(std::size_t i, std::size_t j) const { return body_(i, j); }

private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix body, Unchecked) : body_(std::move(body)) {}
    ComplexMatrix body_;
};

StateDiagnostics validate_state(const ComplexMatrix& rho);

// theta, phi in [0, pi/2]
struct PureStateParams {
    double theta;
    double phi;
};

struct IsotropicParams {
    double p;  // mixing weight in [0,1]
};

// cos(theta)sin(phi) e1⊗e1 + sin(theta)sin(phi) e2⊗e2 + cos(phi) e3⊗e3
ComplexVector pure_state(const PureStateParams& params);
ComplexVector psi_max();

// (1-p)/9 * I + p |Psi_max><Psi_max|
DensityMatrix isotropic_state(const IsotropicParams& params);

// (||rho^{T_A}||_1 - 1)/2, cross-checked against the absolute sum of
// negative eigenvalues of the partial transpose.
double negativity(const DensityMatrix& rho);

double negativity_pure_closed_form(const PureStateParams& params);
double negativity_isotropic_closed_form(const IsotropicParams& params);

// Haar-ish random unitary: QR of a complex Gaussian matrix with the
// diagonal phases normalized. Seedable for reproducible suites.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);
DensityMatrix random_density_matrix(std::size_t n, std::mt19937_64& rng);

}  // namespace qutrit
