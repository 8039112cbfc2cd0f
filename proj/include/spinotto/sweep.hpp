#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinotto/otto_cycle.hpp"

namespace spinotto {

// Engine parameters shared by every grid point of a sweep.
struct SweepBase {
    double b0;
    double b1;
    double b2;
    BathTemperature t_hot;
    BathTemperature t_cold;
    IntegratorConfig integrator{};
};

// Cartesian grid pulses x spins x tau_grid.
struct SweepSpec {
    SweepBase base;
    std::vector<double> tau_grid;  // strictly ascending, all > 0
    std::vector<PulseShape> pulses;
    std::vector<SpinQuantumNumber> spins;
    int threads = 1;

    void validate() const;
};

// One grid point's identity plus its cycle observables.
struct SweepRecord {
    std::string pulse_tag;
    std::optional<double> exponent;  // empty for the sinusoidal pulse
    int two_i = 0;
    double tau = 0.0;
    CycleResult result;
};

// Runs every grid point (a worker pool when spec.threads > 1) and returns
// records ordered by (pulse, spin, tau) regardless of scheduling. Rows that
// fail to converge carry converged = false rather than aborting the sweep.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

// CSV with fixed columns:
// pulse,n,two_I,tau,W,eta,Q1,Q2,dS_E,W_fric,C,steps,converged
// Numbers use %.17g so repeated runs are byte-identical; n is empty for
// sinusoidal rows and eta is empty when undefined.
std::string csv_header();
std::string csv_line(const SweepRecord& rec);
void write_csv(const std::vector<SweepRecord>& records, std::ostream& out);

// First zero crossing of W(tau) scanning upward from bracket.first in steps
// of scan_step, refined by bisection until the bracket is narrower than
// resolution; returns the bracket midpoint. base.shape/base.total_tau are
// overridden by pulse and the scanned tau. Throws when W is already
// positive at the bracket start or never turns positive within it.
double find_critical_time(const CycleConfig& base, PulseShape pulse,
                          std::pair<double, double> bracket, double scan_step = 0.25,
                          double resolution = 1e-3);

// Smallest grid tau whose total friction work falls below threshold;
// std::nullopt when no grid point qualifies.
std::optional<double> frictionless_scan(const CycleConfig& base, PulseShape pulse,
                                        const std::vector<double>& tau_grid, double threshold);

}  // namespace spinotto
