#include "spinotto/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace spinotto {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CycleConfig point_config(const SweepBase& base, PulseShape pulse, SpinQuantumNumber spin,
                         double tau) {
    return CycleConfig{base.b0, base.b1,   base.b2, base.t_hot,     base.t_cold,
                       spin,    pulse,     tau,     base.integrator};
}

}  // namespace

void SweepSpec::validate() const {
    if (tau_grid.empty()) throw std::invalid_argument("sweep needs a non-empty tau grid");
    for (size_t i = 0; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > 0.0))
            throw std::invalid_argument("sweep tau values must be positive");
        if (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))
            throw std::invalid_argument("sweep tau grid must be strictly ascending");
    }
    if (pulses.empty()) throw std::invalid_argument("sweep needs at least one pulse");
    if (spins.empty()) throw std::invalid_argument("sweep needs at least one spin");
    if (threads < 1) throw std::invalid_argument("sweep needs threads >= 1");
    base.integrator.validate();
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
    spec.validate();

    // Fixed (pulse, spin, tau) order; workers fill results by index, so the
    // output is identical however the pool schedules the points.
    std::vector<SweepRecord> records;
    std::vector<CycleConfig> configs;
    records.reserve(spec.pulses.size() * spec.spins.size() * spec.tau_grid.size());
    configs.reserve(records.capacity());
    for (const PulseShape& pulse : spec.pulses)
        for (const SpinQuantumNumber& spin : spec.spins)
            for (double tau : spec.tau_grid) {
                SweepRecord rec;
                rec.pulse_tag = pulse.tag();
                if (pulse.family() == PulseShape::Family::Power)
                    rec.exponent = pulse.exponent();
                rec.two_i = spin.two_i();
                rec.tau = tau;
                records.push_back(std::move(rec));
                configs.push_back(point_config(spec.base, pulse, spin, tau));
            }

    const size_t jobs = configs.size();
    const size_t workers =
        std::min<size_t>(std::max(spec.threads, 1), jobs);

    if (workers <= 1) {
        for (size_t i = 0; i < jobs; ++i)
            records[i].result = run_cycle_best_effort(configs[i]);
        return records;
    }

    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) {
            try {
                records[i].result = run_cycle_best_effort(configs[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return records;
}

std::string csv_header() {
    return "pulse,n,two_I,tau,W,eta,Q1,Q2,dS_E,W_fric,C,steps,converged";
}

std::string csv_line(const SweepRecord& rec) {
    const CycleResult& r = rec.result;
    std::string line = rec.pulse_tag;
    line += ',';
    if (rec.exponent) line += fmt(*rec.exponent);
    line += ',';
    line += std::to_string(rec.two_i);
    line += ',';
    line += fmt(rec.tau);
    line += ',';
    line += fmt(r.net_work);
    line += ',';
    if (r.efficiency) line += fmt(*r.efficiency);
    line += ',';
    line += fmt(r.q_hot);
    line += ',';
    line += fmt(r.q_cold);
    line += ',';
    line += fmt(r.delta_s_e);
    line += ',';
    line += fmt(r.w_fric_total);
    line += ',';
    line += fmt(r.coherence_expansion);
    line += ',';
    line += std::to_string(r.steps_used);
    line += ',';
    line += r.converged ? '1' : '0';
    return line;
}

void write_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
    out << csv_header() << '\n';
    for (const SweepRecord& rec : records) out << csv_line(rec) << '\n';
}

double find_critical_time(const CycleConfig& base, PulseShape pulse,
                          std::pair<double, double> bracket, double scan_step,
                          double resolution) {
    const auto [lo, hi] = bracket;
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("critical-time bracket needs 0 < lo < hi");
    if (!(scan_step > 0.0) || !(resolution > 0.0))
        throw std::invalid_argument("critical-time scan needs positive step and resolution");

    CycleConfig cfg = base;
    cfg.shape = pulse;
    auto work_at = [&cfg](double tau) {
        cfg.total_tau = tau;
        return run_cycle(cfg).net_work;
    };

    double t_neg = lo;
    if (work_at(lo) > 0.0)
        throw std::runtime_error(
            "work is already positive at the bracket start; the first crossing lies below");

    // March upward to the first sign change, then bisect inside that cell so
    // the result is the FIRST crossing even when the work is non-monotone.
    double t_pos = lo;
    bool found = false;
    for (double t = lo + scan_step; !found; t += scan_step) {
        if (t > hi) t = hi;
        if (work_at(t) > 0.0) {
            t_pos = t;
            found = true;
        } else {
            t_neg = t;
        }
        if (!found && t >= hi)
            throw std::runtime_error("work never turns positive within the bracket");
    }

    while (t_pos - t_neg > resolution) {
        const double mid = 0.5 * (t_neg + t_pos);
        (work_at(mid) > 0.0 ? t_pos : t_neg) = mid;
    }
    return 0.5 * (t_neg + t_pos);
}

std::optional<double> frictionless_scan(const CycleConfig& base, PulseShape pulse,
                                        const std::vector<double>& tau_grid,
                                        double threshold) {
    if (tau_grid.empty())
        throw std::invalid_argument("frictionless scan needs a non-empty tau grid");
    CycleConfig cfg = base;
    cfg.shape = pulse;
    for (double tau : tau_grid) {
        cfg.total_tau = tau;
        if (run_cycle(cfg).w_fric_total < threshold) return tau;
    }
    return std::nullopt;
}

}  // namespace spinotto
