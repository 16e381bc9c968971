#pragma once

#include <optional>
#include <vector>

#include "qutrit/lindblad.hpp"
#include "qutrit/states.hpp"

namespace qutrit {

struct IntegratorSettings {
    double dt = 1e-3;
    double t_end = 10.0;
    std::size_t sample_every = 10;
    bool adapt = false;        // step-halving error control
    double adapt_tol = 1e-10;  // per-step elementwise target when adapt is on
};

struct SampleDiagnostics {
    double trace_defect;
    double hermiticity_defect;
    double min_eigenvalue;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<double> negativities;  // 0 for single-atom runs
    std::vector<SampleDiagnostics> diagnostics;

    std::size_t size() const { return times.size(); }
    const DensityMatrix& final_state() const { return states.back(); }
};

// Classical fixed-step RK4 on drho/dt = L(rho), with per-sample
// re-symmetrization and physicality diagnostics. Throws (with the
// offending time in the message) if a sample breaches the
// DensityMatrix invariants.
Trajectory evolve_rk4(const LindbladGenerator& gen, const DensityMatrix& rho0,
                      const IntegratorSettings& settings);

// Exact propagator for system II initial states supported on the
// span of e1⊗e1, e2⊗e2, e3⊗e3 (flat indices 1,5,9).
DensityMatrix analytic_II_general(const DensityMatrix& rho0, const SystemIIParams& params,
                                  double t);

// Exact propagator for the isotropic family.
DensityMatrix analytic_II_isotropic(double p, const SystemIIParams& params, double t);

// N(t) for the maximally entangled initial state under system II:
// (1/3)(e^{-2 ge t} + e^{-(ge+gu) t} + e^{-2 gu t}).
double negativity_psimax_closed_form(const SystemIIParams& params, double t);

// t -> infinity limit of system II at maximal interference (gu = 0).
DensityMatrix asymptotic_state_max_interference(const DensityMatrix& rho0);

// sin(phi) cos(phi) sin(theta); never exceeds the initial negativity.
double asymptotic_negativity_pure(const PureStateParams& params);

struct AsymptoticIsotropic {
    DensityMatrix state;
    double negativity;  // max(0, (5p-2)/9)
};
AsymptoticIsotropic asymptotic_isotropic(double p);

struct SteadyState {
    double time;
    DensityMatrix state;
};

// Earliest sample after which the max elementwise change over the
// trailing window stays below tol.
std::optional<SteadyState> detect_steady_state(const Trajectory& traj, double window,
                                               double tol);

}  // namespace qutrit
