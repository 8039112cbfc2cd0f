#include "spinotto/otto_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinotto {

namespace {

struct StrokeOutcome {
    DensityMatrix rho_end;
    double ds_e;  // energy-entropy increment across the stroke
    double w_fric;
    int steps;
    bool converged;
    double last_distance;
};

StrokeOutcome run_stroke(const DensityMatrix& rho_start, double b_from, double b_to,
                         const CycleConfig& cfg, const SpinOperators& ops,
                         const Hamiltonian& h_from, const Hamiltonian& h_to) {
    const FieldProtocol proto(cfg.b0, b_from, b_to, cfg.total_tau, cfg.shape);
    StrokeResult sr = evolve_stroke(rho_start, proto, ops, cfg.integrator);
    const AdiabaticTarget target = adiabatic_target(rho_start, h_from, h_to);
    const double ds_e = energy_entropy(sr.rho, h_to) - energy_entropy(rho_start, h_from);
    const double w_fric = friction_work(sr.rho, target);
    return {std::move(sr.rho), ds_e, w_fric, sr.steps, sr.converged, sr.last_distance};
}

// Energetic bookkeeping shared by the finite-time cycle and both limits:
// rho_2 is the expansion endpoint, rho_1 the compression endpoint.
CycleResult assemble(const Hamiltonian& h1, const Hamiltonian& h2,
                     const DensityMatrix& rho_t1, const DensityMatrix& rho_t2,
                     const DensityMatrix& rho_2, const DensityMatrix& rho_1) {
    CycleResult r;
    r.w_expansion = internal_energy(rho_t1, h1) - internal_energy(rho_2, h2);
    r.w_compression = internal_energy(rho_t2, h2) - internal_energy(rho_1, h1);
    r.q_hot = internal_energy(rho_t1, h1) - internal_energy(rho_1, h1);
    r.q_cold = internal_energy(rho_t2, h2) - internal_energy(rho_2, h2);
    r.net_work = r.w_expansion + r.w_compression;
    if (r.q_hot > 0.0) r.efficiency = r.net_work / r.q_hot;
    return r;
}

CycleResult run_cycle_impl(const CycleConfig& cfg, double* worst_distance) {
    const SpinOperators ops = spin_operators(cfg.spin);
    const Hamiltonian h1 = hamiltonian_at(cfg.b0, cfg.b1, ops);
    const Hamiltonian h2 = hamiltonian_at(cfg.b0, cfg.b2, ops);

    const DensityMatrix rho_t1 = gibbs_state(h1, cfg.t_hot);
    StrokeOutcome expansion = run_stroke(rho_t1, cfg.b1, cfg.b2, cfg, ops, h1, h2);
    const DensityMatrix rho_t2 = gibbs_state(h2, cfg.t_cold);
    StrokeOutcome compression = run_stroke(rho_t2, cfg.b2, cfg.b1, cfg, ops, h2, h1);

    CycleResult r = assemble(h1, h2, rho_t1, rho_t2, expansion.rho_end,
                             compression.rho_end);
    r.delta_s_e = expansion.ds_e + compression.ds_e;
    r.w_fric_total = expansion.w_fric + compression.w_fric;
    r.coherence_expansion = coherence(expansion.rho_end, h2, 0, 1);
    r.steps_used = std::max(expansion.steps, compression.steps);
    r.converged = expansion.converged && compression.converged;
    if (worst_distance)
        *worst_distance = std::max(expansion.last_distance, compression.last_distance);
    return r;
}

}  // namespace

CycleResult run_cycle(const CycleConfig& cfg) {
    double worst_distance = 0.0;
    CycleResult r = run_cycle_impl(cfg, &worst_distance);
    if (!r.converged) throw ConvergenceError(worst_distance, r.steps_used);
    return r;
}

CycleResult run_cycle_best_effort(const CycleConfig& cfg) {
    return run_cycle_impl(cfg, nullptr);
}

CycleResult adiabatic_limit_cycle(const CycleConfig& cfg) {
    const SpinOperators ops = spin_operators(cfg.spin);
    const Hamiltonian h1 = hamiltonian_at(cfg.b0, cfg.b1, ops);
    const Hamiltonian h2 = hamiltonian_at(cfg.b0, cfg.b2, ops);

    const DensityMatrix rho_t1 = gibbs_state(h1, cfg.t_hot);
    const DensityMatrix rho_t2 = gibbs_state(h2, cfg.t_cold);
    const AdiabaticTarget expansion = adiabatic_target(rho_t1, h1, h2);
    const AdiabaticTarget compression = adiabatic_target(rho_t2, h2, h1);

    CycleResult r =
        assemble(h1, h2, rho_t1, rho_t2, expansion.rho_a, compression.rho_a);
    // Populations ride the eigenstates unchanged: no entropy production, no
    // friction, no coherence, whatever the numerics would round to.
    r.delta_s_e = 0.0;
    r.w_fric_total = 0.0;
    r.coherence_expansion = 0.0;
    return r;
}

CycleResult sudden_limit_cycle(const CycleConfig& cfg) {
    const SpinOperators ops = spin_operators(cfg.spin);
    const Hamiltonian h1 = hamiltonian_at(cfg.b0, cfg.b1, ops);
    const Hamiltonian h2 = hamiltonian_at(cfg.b0, cfg.b2, ops);

    const DensityMatrix rho_t1 = gibbs_state(h1, cfg.t_hot);
    const DensityMatrix rho_t2 = gibbs_state(h2, cfg.t_cold);
    const DensityMatrix rho_2 = sudden_target(rho_t1);
    const DensityMatrix rho_1 = sudden_target(rho_t2);

    CycleResult r = assemble(h1, h2, rho_t1, rho_t2, rho_2, rho_1);
    r.delta_s_e = (energy_entropy(rho_2, h2) - energy_entropy(rho_t1, h1)) +
                  (energy_entropy(rho_1, h1) - energy_entropy(rho_t2, h2));
    r.w_fric_total = friction_work(rho_2, adiabatic_target(rho_t1, h1, h2)) +
                     friction_work(rho_1, adiabatic_target(rho_t2, h2, h1));
    r.coherence_expansion = coherence(rho_2, h2, 0, 1);
    return r;
}

double max_efficiency(double b0, double b1, double b2) {
    const double gap1 = std::hypot(b0, b1);
    if (!(gap1 > 0.0))
        throw std::invalid_argument("max efficiency needs a non-vanishing initial gap");
    return 1.0 - std::hypot(b0, b2) / gap1;
}

double carnot_efficiency(BathTemperature t_hot, BathTemperature t_cold) {
    return 1.0 - t_cold.t() / t_hot.t();
}

bool positive_work_condition(const CycleConfig& cfg) {
    const double gap1 = std::hypot(cfg.b0, cfg.b1);
    const double gap2 = std::hypot(cfg.b0, cfg.b2);
    return cfg.t_hot.t() * gap2 > gap1 * cfg.t_cold.t();
}

}  // namespace spinotto
