#pragma once

#include <optional>
#include <vector>

#include "qutrit/linalg.hpp"

namespace qutrit {

// System I: V-type atom with cross damping gamma12 = betaI*sqrt(g1*g2).
struct SystemIParams {
    double gamma1;
    double gamma2;
    double betaI;

    double gamma12() const;
    void check() const;  // throws on negative rates or betaI outside [0,1]
};

// System II: asymmetric decay e->g, u->g; interference
// betaII = (ge-gu)/(ge+gu), maximal when u is metastable (gu = 0).
struct SystemIIParams {
    double gammaE;
    double gammaU;

    double betaII() const { return (gammaE - gammaU) / (gammaE + gammaU); }
    void check() const;
};

// One dissipative contribution (rate/2)(2 L rho M† - M†L rho - rho M†L).
// Diagonal terms have M = L; cross terms carry the signed cross rate.
struct DissipativeTerm {
    ComplexMatrix jump;    // L
    ComplexMatrix paired;  // M
    double rate;
};

class LindbladGenerator {
public:
    LindbladGenerator(std::size_t dimension, std::vector<DissipativeTerm> terms,
                      std::optional<ComplexMatrix> hamiltonian = std::nullopt);

    std::size_t dimension() const { return dimension_; }
    const std::vector<DissipativeTerm>& terms() const { return terms_; }

    // -i[H,rho] + sum of dissipative terms
    ComplexMatrix apply(const ComplexMatrix& rho) const;

    // S with S vec(rho) = vec(apply(rho)) under column stacking.
    ComplexMatrix superoperator_matrix() const;

private:
    std::size_t dimension_;
    std::vector<DissipativeTerm> terms_;
    std::optional<ComplexMatrix> hamiltonian_;
};

// sigma_jk = |j><k| on C^3, levels 1-based.
ComplexMatrix transition_operator(int j, int k);

// Optional diagonal level shifts diag(w1, w2, 0) per atom; the dynamics
// of interest is the pure dissipator, so the default is H = 0.
struct LevelShifts {
    double omega1;
    double omega2;
};

LindbladGenerator generator_system_I(const SystemIParams& params, int atoms,
                                     std::optional<LevelShifts> shifts = std::nullopt);
LindbladGenerator generator_system_II(const SystemIIParams& params, int atoms,
                                      std::optional<LevelShifts> shifts = std::nullopt);

// Dimension of the null space of the superoperator, singular values
// below tol*max counting as zero. Distinguishes the ergodic case
// (unique stationary state) from the non-ergodic one.
int superoperator_null_space_dimension(const LindbladGenerator& gen, double tol = 1e-8);

}  // namespace qutrit
