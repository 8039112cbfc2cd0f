#pragma once

#include <optional>

#include "spinotto/propagator.hpp"

namespace spinotto {

// Full engine specification: fields, baths, spin, pulse, stroke time.
// The working fluid is a single spin in H(t) = b0*Iz + B(t)*Ix; the cycle is
// hot isochore (thermalize at t_hot, field b1) -> expansion adiabat
// (b1 -> b2 over total_tau/2) -> cold isochore (thermalize at t_cold,
// field b2) -> compression adiabat (b2 -> b1 over total_tau/2).
struct CycleConfig {
    double b0;
    double b1;  // transverse field on the hot isochore
    double b2;  // transverse field on the cold isochore
    BathTemperature t_hot;
    BathTemperature t_cold;
    SpinQuantumNumber spin;
    PulseShape shape;
    double total_tau;  // total time allotted to the two adiabats
    IntegratorConfig integrator{};
};

// All per-cycle observables. Work is positive when extracted from the fluid;
// heat is positive when absorbed by the fluid.
struct CycleResult {
    double w_expansion = 0.0;    // work output of the b1 -> b2 stroke
    double w_compression = 0.0;  // work output of the b2 -> b1 stroke
    double q_hot = 0.0;          // heat drawn from the hot bath
    double q_cold = 0.0;         // heat taken from the cold bath (negative when dumped)
    double net_work = 0.0;       // w_expansion + w_compression = q_hot + q_cold
    std::optional<double> efficiency;  // net_work / q_hot, defined only when q_hot > 0
    double delta_s_e = 0.0;      // energy-entropy production summed over both adiabats
    double w_fric_total = 0.0;   // friction work summed over both adiabats
    double coherence_expansion = 0.0;  // |<e0|rho|e1>| in the final basis at expansion end
    int steps_used = 0;          // larger of the two strokes' accepted step counts
    bool converged = true;       // both strokes met the integrator tolerance
};

// Finite-time cycle; throws ConvergenceError when a stroke fails to converge.
CycleResult run_cycle(const CycleConfig& cfg);

// As run_cycle, but reports non-convergence through the converged flag
// (values from the deepest refinement) instead of throwing.
CycleResult run_cycle_best_effort(const CycleConfig& cfg);

// Quasi-static limit: both strokes replaced by their adiabatic targets.
// Yields the work upper bound; delta_s_e, w_fric_total and the coherence
// vanish identically. total_tau and integrator settings are ignored.
CycleResult adiabatic_limit_cycle(const CycleConfig& cfg);

// Instantaneous-quench limit: both strokes leave the state unchanged.
// Yields the work lower bound.
CycleResult sudden_limit_cycle(const CycleConfig& cfg);

// 1 - sqrt(b0^2 + b2^2)/sqrt(b0^2 + b1^2): the efficiency of the
// quasi-static cycle, an upper bound for any finite-time efficiency here.
double max_efficiency(double b0, double b1, double b2);

// 1 - t_cold/t_hot.
double carnot_efficiency(BathTemperature t_hot, BathTemperature t_cold);

// Whether the quasi-static cycle can extract net work:
// t_hot * gap2 > gap1 * t_cold (division-free form of T1 > (d1/d2) T2).
bool positive_work_condition(const CycleConfig& cfg);

}  // namespace spinotto
