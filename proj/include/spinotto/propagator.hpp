#pragma once

#include <stdexcept>

#include "spinotto/quantum_state.hpp"

namespace spinotto {

// Step-doubling controls for the stroke integrator.
struct IntegratorConfig {
    int initial_steps = 512;
    double convergence_tol = 1e-9;  // trace-norm distance between refinements
    int max_doublings = 12;

    void validate() const;
};

// Raised when step doubling exhausts max_doublings above tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(double last_distance, int steps);

    double last_distance() const { return last_distance_; }
    int steps() const { return steps_; }

private:
    double last_distance_;
    int steps_;
};

// Outcome of one adaptively refined stroke.
struct StrokeResult {
    DensityMatrix rho;
    int steps;             // step count of the accepted refinement
    bool converged;
    double last_distance;  // trace-norm distance between the last two refinements
};

// Time-ordered stroke propagator at a fixed step count:
// U = prod_k exp(-i H(t_k + dt/2) dt), dt = (tau/2)/steps, later factors on
// the left. Exact midpoint exponentials, so U is unitary to round-off.
ComplexMatrix stroke_propagator(const FieldProtocol& proto, const SpinOperators& ops, int steps);

// U rho0 U^dagger at a fixed step count.
DensityMatrix evolve_fixed(const DensityMatrix& rho0, const FieldProtocol& proto,
                           const SpinOperators& ops, int steps);

// Doubles the step count until successive results agree to convergence_tol
// in trace norm. Never throws for valid inputs; inspect .converged.
StrokeResult evolve_stroke(const DensityMatrix& rho0, const FieldProtocol& proto,
                           const SpinOperators& ops, const IntegratorConfig& cfg = {});

// As evolve_stroke, but throws ConvergenceError when tolerance is not met.
DensityMatrix evolve(const DensityMatrix& rho0, const FieldProtocol& proto,
                     const SpinOperators& ops, const IntegratorConfig& cfg = {});

// Final state of an infinitely slow stroke: the populations of the initial
// state placed on the final eigenbasis. For a thermal start this is a Gibbs
// state at inverse temperature beta_a = beta_i * gap_i / gap_f.
struct AdiabaticTarget {
    DensityMatrix rho_a;
    double beta_a;
};

// rho0 must be diagonal in the eigenbasis of h_i (populations are otherwise
// unidentifiable); both gaps must be non-degenerate.
AdiabaticTarget adiabatic_target(const DensityMatrix& rho0, const Hamiltonian& h_i,
                                 const Hamiltonian& h_f);

// The instantaneous-quench limit: the state does not change.
DensityMatrix sudden_target(const DensityMatrix& rho0);

// Excess work of the finite-time stroke over the quasi-static one:
// (1/beta_a) * relative_entropy(rho_tau, rho_a). Agrees with the internal
// energy difference Tr[H_f (rho_tau - rho_a)] for thermal starts.
double friction_work(const DensityMatrix& rho_tau, const AdiabaticTarget& target);

}  // namespace spinotto
