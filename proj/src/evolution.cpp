#include "qutrit/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qutrit {

namespace {

ComplexVector vectorize(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    ComplexVector v(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) v[i + n * j] = m(i, j);
    return v;
}

ComplexMatrix devectorize(const ComplexVector& v, std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = v[i + n * j];
    return m;
}

// One RK4 step for the linear system dv/dt = S v.
ComplexVector rk4_step(const ComplexMatrix& s, const ComplexVector& v, double dt) {
    const std::size_t n = v.size();
    ComplexVector k1 = matvec(s, v);
    ComplexVector tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * dt * k1[i];
    ComplexVector k2 = matvec(s, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * dt * k2[i];
    ComplexVector k3 = matvec(s, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + dt * k3[i];
    ComplexVector k4 = matvec(s, tmp);
    ComplexVector out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = v[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Step-halving control: subdivide until the full-step/half-step
// discrepancy meets tol, keeping the half-step result.
ComplexVector adaptive_step(const ComplexMatrix& s, const ComplexVector& v, double dt,
                            double tol, int depth = 0) {
    ComplexVector full = rk4_step(s, v, dt);
    ComplexVector half = rk4_step(s, rk4_step(s, v, 0.5 * dt), 0.5 * dt);
    if (max_abs_diff(full, half) <= tol || depth >= 12) return half;
    ComplexVector mid = adaptive_step(s, v, 0.5 * dt, tol, depth + 1);
    return adaptive_step(s, mid, 0.5 * dt, tol, depth + 1);
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

void push_sample(Trajectory& traj, double t, const ComplexMatrix& raw) {
    ComplexMatrix rho = symmetrized(raw);
    SampleDiagnostics diag;
    diag.hermiticity_defect = raw.hermiticity_defect();
    diag.trace_defect = std::abs(rho.trace() - Complex{1.0});
    const auto eigs = hermitian_eigenvalues(rho);
    diag.min_eigenvalue = eigs.front();
    if (diag.trace_defect > DensityMatrix::kTol || diag.min_eigenvalue < -DensityMatrix::kTol ||
        diag.hermiticity_defect > DensityMatrix::kTol)
        throw std::runtime_error("evolve_rk4: physicality breach at t = " + std::to_string(t) +
                                 " (trace defect " + std::to_string(diag.trace_defect) +
                                 ", min eigenvalue " + std::to_string(diag.min_eigenvalue) + ")");
    DensityMatrix state = DensityMatrix::unchecked(std::move(rho));
    traj.negativities.push_back(state.dimension() == 9 ? negativity(state) : 0.0);
    traj.times.push_back(t);
    traj.states.push_back(std::move(state));
    traj.diagnostics.push_back(diag);
}

}  // namespace

Trajectory evolve_rk4(const LindbladGenerator& gen, const DensityMatrix& rho0,
                      const IntegratorSettings& settings) {
    if (gen.dimension() != rho0.dimension())
        throw std::invalid_argument("evolve_rk4: generator/state dimension mismatch");
    if (settings.dt <= 0.0 || settings.t_end <= 0.0 || settings.sample_every < 1)
        throw std::invalid_argument("evolve_rk4: invalid integrator settings");

    const std::size_t n = gen.dimension();
    const ComplexMatrix s = gen.superoperator_matrix();
    const auto steps = static_cast<std::size_t>(std::llround(settings.t_end / settings.dt));

    Trajectory traj;
    ComplexVector v = vectorize(rho0.body());
    push_sample(traj, 0.0, rho0.body());
    for (std::size_t step = 1; step <= steps; ++step) {
        v = settings.adapt ? adaptive_step(s, v, settings.dt, settings.adapt_tol)
                           : rk4_step(s, v, settings.dt);
        if (step % settings.sample_every == 0 || step == steps)
            push_sample(traj, static_cast<double>(step) * settings.dt, devectorize(v, n));
    }
    return traj;
}

DensityMatrix analytic_II_general(const DensityMatrix& rho0, const SystemIIParams& params,
                                  double t) {
    params.check();
    if (rho0.dimension() != 9)
        throw std::invalid_argument("analytic_II_general: expected a 9x9 state");
    auto supported = [](std::size_t k) { return k == 0 || k == 4 || k == 8; };
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            if (!(supported(i) && supported(j)) && std::abs(rho0(i, j)) > 1e-12)
                throw std::invalid_argument(
                    "analytic_II_general: initial state must be supported on e1⊗e1, e2⊗e2, e3⊗e3");

    const double ge = params.gammaE, gu = params.gammaU;
    const double ee = std::exp(-ge * t), eu = std::exp(-gu * t);
    const Complex r11 = rho0(0, 0), r15 = rho0(0, 4), r19 = rho0(0, 8);
    const Complex r55 = rho0(4, 4), r59 = rho0(4, 8), r99 = rho0(8, 8);

    ComplexMatrix rho(9, 9);
    rho(0, 0) = ee * ee * r11;
    rho(0, 4) = ee * eu * r15;
    rho(0, 8) = ee * r19;
    rho(2, 2) = (ee - ee * ee) * r11;
    rho(4, 4) = eu * eu * r55;  // decays at 2*gu (trace preservation)
    rho(4, 8) = eu * r59;
    rho(5, 5) = (eu - eu * eu) * r55;
    rho(6, 6) = (ee - ee * ee) * r11;
    rho(7, 7) = (eu - eu * eu) * r55;
    rho(8, 8) = (1.0 + ee * ee - 2.0 * ee) * r11 + (1.0 + eu * eu - 2.0 * eu) * r55 + r99;
    rho(4, 0) = std::conj(rho(0, 4));
    rho(8, 0) = std::conj(rho(0, 8));
    rho(8, 4) = std::conj(rho(4, 8));
    return DensityMatrix(std::move(rho));
}

DensityMatrix analytic_II_isotropic(double p, const SystemIIParams& params, double t) {
    params.check();
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("analytic_II_isotropic: p must lie in [0,1]");
    const double ge = params.gammaE, gu = params.gammaU;
    const double ee = std::exp(-ge * t), eu = std::exp(-gu * t);
    const double eeu = std::exp(-(ge + gu) * t);

    ComplexMatrix w(9, 9);
    w(0, 0) = (1.0 + 2.0 * p) / 9.0 * ee * ee;
    w(0, 4) = p / 3.0 * eeu;
    w(0, 8) = p / 3.0 * ee;
    w(1, 1) = (1.0 - p) / 9.0 * eeu;
    w(2, 2) = (p - 1.0) / 9.0 * eeu - (1.0 + 2.0 * p) / 9.0 * ee * ee + ee / 3.0;
    w(3, 3) = (1.0 - p) / 9.0 * eeu;
    w(4, 4) = (1.0 + 2.0 * p) / 9.0 * eu * eu;
    w(4, 8) = p / 3.0 * eu;
    w(5, 5) = (p - 1.0) / 9.0 * eeu - (1.0 + 2.0 * p) / 9.0 * eu * eu + eu / 3.0;
    w(6, 6) = w(2, 2);
    w(7, 7) = w(5, 5);
    w(8, 8) = 1.0 + (1.0 + 2.0 * p) / 9.0 * (ee * ee + eu * eu) +
              2.0 * (1.0 - p) / 9.0 * eeu - 2.0 / 3.0 * (ee + eu);
    w(4, 0) = std::conj(w(0, 4));
    w(8, 0) = std::conj(w(0, 8));
    w(8, 4) = std::conj(w(4, 8));
    return DensityMatrix(std::move(w));
}

double negativity_psimax_closed_form(const SystemIIParams& params, double t) {
    const double ge = params.gammaE, gu = params.gammaU;
    return (std::exp(-2.0 * ge * t) + std::exp(-(ge + gu) * t) + std::exp(-2.0 * gu * t)) / 3.0;
}

DensityMatrix asymptotic_state_max_interference(const DensityMatrix& rho0) {
    if (rho0.dimension() != 9)
        throw std::invalid_argument("asymptotic_state_max_interference: expected a 9x9 state");
    const ComplexMatrix& r = rho0.body();
    ComplexMatrix as(9, 9);
    as(4, 4) = r(4, 4);
    as(4, 5) = r(4, 5);
    as(4, 7) = r(4, 7);
    as(4, 8) = r(4, 8);
    as(5, 7) = r(5, 7);
    as(5, 5) = r(3, 3) + r(5, 5);
    as(5, 8) = r(3, 6) + r(5, 8);
    as(7, 7) = r(1, 1) + r(7, 7);
    as(7, 8) = r(1, 2) + r(7, 8);
    as(8, 8) = r(0, 0) + r(2, 2) + r(6, 6) + r(8, 8);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < i; ++j) as(i, j) = std::conj(as(j, i));
    return DensityMatrix(std::move(as));
}

double asymptotic_negativity_pure(const PureStateParams& params) {
    return std::sin(params.phi) * std::cos(params.phi) * std::sin(params.theta);
}

AsymptoticIsotropic asymptotic_isotropic(double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("asymptotic_isotropic: p must lie in [0,1]");
    ComplexMatrix as(9, 9);
    as(4, 4) = (1.0 + 2.0 * p) / 9.0;
    as(4, 8) = p / 3.0;
    as(8, 4) = p / 3.0;
    as(5, 5) = 2.0 * (1.0 - p) / 9.0;
    as(7, 7) = 2.0 * (1.0 - p) / 9.0;
    as(8, 8) = 2.0 * (2.0 + p) / 9.0;
    const double neg = p <= 0.4 ? 0.0 : (5.0 * p - 2.0) / 9.0;
    return {DensityMatrix(std::move(as)), neg};
}

std::optional<SteadyState> detect_steady_state(const Trajectory& traj, double window,
                                               double tol) {
    if (traj.size() < 2) return std::nullopt;
    const double t_end = traj.times.back();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t0 = traj.times[i];
        if (t0 + window > t_end) break;
        bool plateau = true;
        for (std::size_t j = i + 1; j < traj.size() && traj.times[j] <= t0 + window; ++j) {
            const ComplexMatrix diff = traj.states[j].body() - traj.states[i].body();
            if (diff.max_abs() > tol) {
                plateau = false;
                break;
            }
        }
        if (plateau) return SteadyState{t0, traj.states.back()};
    }
    return std::nullopt;
}

}  // namespace qutrit
