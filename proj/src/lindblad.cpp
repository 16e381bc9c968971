#include "qutrit/lindblad.hpp"

#include <cmath>
#include <stdexcept>

namespace qutrit {

double SystemIParams::gamma12() const { return betaI * std::sqrt(gamma1 * gamma2); }

void SystemIParams::check() const {
    if (gamma1 < 0.0 || gamma2 < 0.0)
        throw std::invalid_argument("system I: decay rates must be non-negative");
    if (betaI < 0.0 || betaI > 1.0)
        throw std::invalid_argument(
            "system I: betaI outside [0,1] violates complete positivity "
            "(damping matrix not PSD)");
}

void SystemIIParams::check() const {
    if (gammaE < 0.0 || gammaU < 0.0)
        throw std::invalid_argument("system II: decay rates must be non-negative");
    if (gammaE + gammaU <= 0.0)
        throw std::invalid_argument("system II: at least one rate must be positive");
}

ComplexMatrix transition_operator(int j, int k) {
    if (j < 1 || j > 3 || k < 1 || k > 3)
        throw std::out_of_range("transition_operator: levels must be in 1..3");
    return ComplexMatrix::unit(3, j - 1, k - 1);
}

LindbladGenerator::LindbladGenerator(std::size_t dimension,
                                     std::vector<DissipativeTerm> terms,
                                     std::optional<ComplexMatrix> hamiltonian)
    : dimension_(dimension), terms_(std::move(terms)), hamiltonian_(std::move(hamiltonian)) {
    for (const auto& term : terms_)
        if (term.jump.rows() != dimension_ || term.paired.rows() != dimension_)
            throw std::invalid_argument("LindbladGenerator: term dimension mismatch");
    if (hamiltonian_ && hamiltonian_->rows() != dimension_)
        throw std::invalid_argument("LindbladGenerator: Hamiltonian dimension mismatch");
}

ComplexMatrix LindbladGenerator::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != dimension_ || rho.cols() != dimension_)
        throw std::invalid_argument("LindbladGenerator::apply: dimension mismatch");
    ComplexMatrix out(dimension_, dimension_);
    if (hamiltonian_) {
        const ComplexMatrix& h = *hamiltonian_;
        out += Complex(0.0, -1.0) * (h * rho - rho * h);
    }
    for (const auto& term : terms_) {
        const ComplexMatrix mdag = term.paired.adjoint();
        const ComplexMatrix mdl = mdag * term.jump;
        ComplexMatrix contrib = 2.0 * (term.jump * rho * mdag);
        contrib -= mdl * rho;
        contrib -= rho * mdl;
        contrib *= 0.5 * term.rate;
        out += contrib;
    }
    return out;
}

ComplexMatrix LindbladGenerator::superoperator_matrix() const {
    const std::size_t n = dimension_;
    ComplexMatrix s(n * n, n * n);
    // column for each matrix unit under column stacking vec(E)_{i+n*j}
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const ComplexMatrix image = apply(ComplexMatrix::unit(n, i, j));
            const std::size_t col = i + n * j;
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t k = 0; k < n; ++k) s(k + n * l, col) = image(k, l);
        }
    return s;
}

namespace {

std::vector<DissipativeTerm> system_I_single_terms(const SystemIParams& p) {
    const ComplexMatrix s31 = transition_operator(3, 1);
    const ComplexMatrix s32 = transition_operator(3, 2);
    const double g12 = p.gamma12();
    return {
        {s31, s31, p.gamma1},
        {s32, s32, p.gamma2},
        {s31, s32, g12},
        {s32, s31, g12},
    };
}

std::vector<DissipativeTerm> system_II_single_terms(const SystemIIParams& p) {
    // |e>,|u>,|g> sit at levels 1,2,3
    return {
        {transition_operator(3, 1), transition_operator(3, 1), p.gammaE},
        {transition_operator(3, 2), transition_operator(3, 2), p.gammaU},
    };
}

std::vector<DissipativeTerm> lift_two_atoms(const std::vector<DissipativeTerm>& single) {
    const ComplexMatrix id3 = ComplexMatrix::identity(3);
    std::vector<DissipativeTerm> lifted;
    lifted.reserve(2 * single.size());
    for (const auto& term : single)
        lifted.push_back({kron(term.jump, id3), kron(term.paired, id3), term.rate});
    for (const auto& term : single)
        lifted.push_back({kron(id3, term.jump), kron(id3, term.paired), term.rate});
    return lifted;
}

std::optional<ComplexMatrix> lift_hamiltonian(std::optional<LevelShifts> shifts, int atoms) {
    if (!shifts) return std::nullopt;
    ComplexMatrix h(3, 3);
    h(0, 0) = shifts->omega1;
    h(1, 1) = shifts->omega2;
    if (atoms == 1) return h;
    const ComplexMatrix id3 = ComplexMatrix::identity(3);
    return kron(h, id3) + kron(id3, h);
}

LindbladGenerator build(std::vector<DissipativeTerm> single, int atoms,
                        std::optional<LevelShifts> shifts) {
    if (atoms != 1 && atoms != 2)
        throw std::invalid_argument("generator: atoms must be 1 or 2");
    auto hamiltonian = lift_hamiltonian(shifts, atoms);
    if (atoms == 1)
        return LindbladGenerator(3, std::move(single), std::move(hamiltonian));
    return LindbladGenerator(9, lift_two_atoms(single), std::move(hamiltonian));
}

}  // namespace

LindbladGenerator generator_system_I(const SystemIParams& params, int atoms,
                                     std::optional<LevelShifts> shifts) {
    params.check();
    return build(system_I_single_terms(params), atoms, shifts);
}

LindbladGenerator generator_system_II(const SystemIIParams& params, int atoms,
                                      std::optional<LevelShifts> shifts) {
    params.check();
    return build(system_II_single_terms(params), atoms, shifts);
}

int superoperator_null_space_dimension(const LindbladGenerator& gen, double tol) {
    const ComplexMatrix s = gen.superoperator_matrix();
    // singular values via the spectrum of S†S
    const auto eigs = hermitian_eigenvalues(s.adjoint() * s, 1e-6);
    const double max_sv2 = std::max(eigs.back(), 0.0);
    if (max_sv2 == 0.0) return static_cast<int>(eigs.size());
    int count = 0;
    for (double lambda : eigs)
        if (std::sqrt(std::max(lambda, 0.0)) <= tol * std::sqrt(max_sv2)) ++count;
    return count;
}

}  // namespace qutrit
