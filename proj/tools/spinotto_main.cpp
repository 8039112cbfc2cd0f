// spinotto: finite-time quantum Otto cycle of a single driven spin.
//
// Subcommands: cycle (one cycle -> JSON), sweep (tau/pulse/spin grid -> CSV),
// bounds (analytic work bounds and efficiency ceilings), tauc (first
// positive-work crossing), frictionless (first tau with friction below a
// threshold). Parameters come from defaults, then an optional JSON --config,
// then explicit flags, each layer overriding the previous one.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinotto/sweep.hpp"

namespace {

using nlohmann::json;
using namespace spinotto;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Params {
    double b0 = 0.5;
    double b1 = 0.5;
    double b2 = 0.05;
    double t1 = 2.0;
    double t2 = 1.0;
    std::vector<int> two_i = {1};
    std::vector<std::string> pulses = {"sin"};
    double tau = 10.0;
    double tau_start = 1.0;
    double tau_stop = 100.0;
    int tau_points = 100;
    std::string tau_spacing = "linear";
    int initial_steps = 512;
    double tol = 1e-9;
    int max_doublings = 12;
    int threads = 1;
    std::string out = "-";
};

PulseShape parse_pulse(const std::string& s) {
    if (s == "sin") return PulseShape::sinusoidal();
    if (s == "pow") return PulseShape::power(1.0);
    if (s.rfind("pow:", 0) == 0) return PulseShape::power(std::stod(s.substr(4)));
    throw std::invalid_argument("unknown pulse '" + s + "' (expected sin, pow, or pow:<n>)");
}

void load_config(const std::string& path, Params& p) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(in);

    for (const auto& [key, value] : j.items()) {
        if (key == "b0") p.b0 = value.get<double>();
        else if (key == "b1") p.b1 = value.get<double>();
        else if (key == "b2") p.b2 = value.get<double>();
        else if (key == "T1") p.t1 = value.get<double>();
        else if (key == "T2") p.t2 = value.get<double>();
        else if (key == "two_I") {
            p.two_i.clear();
            if (value.is_array())
                for (const auto& v : value) p.two_i.push_back(v.get<int>());
            else
                p.two_i.push_back(value.get<int>());
        } else if (key == "pulses") {
            p.pulses.clear();
            for (const auto& v : value) {
                if (v.is_string()) {
                    p.pulses.push_back(v.get<std::string>());
                } else if (v.is_object() && v.contains("pow")) {
                    p.pulses.push_back("pow:" + fmt(v["pow"].get<double>()));
                } else {
                    throw std::runtime_error(
                        "config pulses entries must be \"sin\" or {\"pow\": n}");
                }
            }
        } else if (key == "tau") {
            if (value.is_number()) {
                p.tau = value.get<double>();
                p.tau_start = p.tau_stop = p.tau;
                p.tau_points = 1;
            } else {
                if (value.contains("start")) p.tau_start = value["start"].get<double>();
                if (value.contains("stop")) p.tau_stop = value["stop"].get<double>();
                if (value.contains("points")) p.tau_points = value["points"].get<int>();
                if (value.contains("spacing"))
                    p.tau_spacing = value["spacing"].get<std::string>();
            }
        } else if (key == "integrator") {
            if (value.contains("initial_steps"))
                p.initial_steps = value["initial_steps"].get<int>();
            if (value.contains("tol")) p.tol = value["tol"].get<double>();
            if (value.contains("max_doublings"))
                p.max_doublings = value["max_doublings"].get<int>();
        } else if (key == "threads") {
            p.threads = value.get<int>();
        } else if (key == "out") {
            p.out = value.get<std::string>();
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
}

std::vector<double> make_tau_grid(const Params& p) {
    if (p.tau_points < 1) throw std::invalid_argument("tau grid needs points >= 1");
    if (p.tau_points == 1) return {p.tau_start};
    if (!(p.tau_stop > p.tau_start))
        throw std::invalid_argument("tau grid needs stop > start");
    std::vector<double> grid(p.tau_points);
    if (p.tau_spacing == "linear") {
        const double step = (p.tau_stop - p.tau_start) / (p.tau_points - 1);
        for (int i = 0; i < p.tau_points; ++i) grid[i] = p.tau_start + i * step;
    } else if (p.tau_spacing == "log") {
        if (!(p.tau_start > 0.0))
            throw std::invalid_argument("log spacing needs tau start > 0");
        const double lstep =
            (std::log(p.tau_stop) - std::log(p.tau_start)) / (p.tau_points - 1);
        for (int i = 0; i < p.tau_points; ++i)
            grid[i] = std::exp(std::log(p.tau_start) + i * lstep);
    } else {
        throw std::invalid_argument("tau spacing must be \"linear\" or \"log\"");
    }
    grid.back() = p.tau_stop;  // exact endpoint despite rounding
    return grid;
}

IntegratorConfig integrator_of(const Params& p) {
    IntegratorConfig cfg;
    cfg.initial_steps = p.initial_steps;
    cfg.convergence_tol = p.tol;
    cfg.max_doublings = p.max_doublings;
    return cfg;
}

CycleConfig cycle_config_of(const Params& p, PulseShape pulse, int two_i, double tau) {
    return CycleConfig{p.b0,
                       p.b1,
                       p.b2,
                       BathTemperature(p.t1),
                       BathTemperature(p.t2),
                       SpinQuantumNumber(two_i),
                       pulse,
                       tau,
                       integrator_of(p)};
}

void emit(const Params& p, const std::string& text) {
    if (p.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(p.out);
    if (!out) throw std::runtime_error("cannot open output file: " + p.out);
    out << text;
}

int do_cycle(const Params& p) {
    const PulseShape pulse = parse_pulse(p.pulses.front());
    const CycleConfig cfg = cycle_config_of(p, pulse, p.two_i.front(), p.tau);
    const CycleResult r = run_cycle_best_effort(cfg);

    json j;
    j["pulse"] = pulse.tag();
    if (pulse.family() == PulseShape::Family::Power)
        j["n"] = pulse.exponent();
    else
        j["n"] = nullptr;
    j["two_i"] = p.two_i.front();
    j["tau"] = p.tau;
    j["w_expansion"] = r.w_expansion;
    j["w_compression"] = r.w_compression;
    j["q_hot"] = r.q_hot;
    j["q_cold"] = r.q_cold;
    j["net_work"] = r.net_work;
    if (r.efficiency)
        j["efficiency"] = *r.efficiency;
    else
        j["efficiency"] = nullptr;
    j["delta_s_e"] = r.delta_s_e;
    j["w_fric_total"] = r.w_fric_total;
    j["coherence_expansion"] = r.coherence_expansion;
    j["steps"] = r.steps_used;
    j["converged"] = r.converged;
    j["normalized"] = {{"net_work", r.net_work / p.t2},
                       {"w_expansion", r.w_expansion / p.t2},
                       {"w_compression", r.w_compression / p.t2},
                       {"q_hot", r.q_hot / p.t2},
                       {"q_cold", r.q_cold / p.t2},
                       {"w_fric_total", r.w_fric_total / p.t2}};
    emit(p, j.dump(2) + "\n");
    return r.converged ? 0 : 2;
}

int do_sweep(const Params& p) {
    SweepSpec spec{SweepBase{p.b0, p.b1, p.b2, BathTemperature(p.t1), BathTemperature(p.t2),
                             integrator_of(p)},
                   make_tau_grid(p),
                   {},
                   {},
                   p.threads};
    for (const std::string& s : p.pulses) spec.pulses.push_back(parse_pulse(s));
    for (int two_i : p.two_i) spec.spins.emplace_back(two_i);

    const std::vector<SweepRecord> records = run_sweep(spec);
    std::string text = csv_header() + "\n";
    bool all_converged = true;
    for (const SweepRecord& rec : records) {
        text += csv_line(rec) + "\n";
        all_converged = all_converged && rec.result.converged;
    }
    emit(p, text);
    return all_converged ? 0 : 2;
}

int do_bounds(const Params& p) {
    const CycleConfig cfg = cycle_config_of(p, parse_pulse(p.pulses.front()),
                                            p.two_i.front(), 1.0);
    const CycleResult lb = sudden_limit_cycle(cfg);
    const CycleResult ub = adiabatic_limit_cycle(cfg);
    const double gap1 = std::hypot(p.b0, p.b1);
    const double gap2 = std::hypot(p.b0, p.b2);

    std::string text;
    text += "delta1 = " + fmt(gap1) + "\n";
    text += "delta2 = " + fmt(gap2) + "\n";
    text += "W_lb = " + fmt(lb.net_work) + "  (W_lb/T2 = " + fmt(lb.net_work / p.t2) +
            ")\n";
    text += "W_up = " + fmt(ub.net_work) + "  (W_up/T2 = " + fmt(ub.net_work / p.t2) +
            ")\n";
    text += "eta_m = " + fmt(max_efficiency(p.b0, p.b1, p.b2)) + "\n";
    text += "eta_c = " +
            fmt(carnot_efficiency(BathTemperature(p.t1), BathTemperature(p.t2))) + "\n";
    text += std::string("positive work condition: ") +
            (positive_work_condition(cfg) ? "satisfied" : "not satisfied") + "\n";
    emit(p, text);
    return 0;
}

int do_tauc(const Params& p, double lo, double hi, double scan_step, double resolution) {
    const CycleConfig cfg = cycle_config_of(p, parse_pulse(p.pulses.front()),
                                            p.two_i.front(), 1.0);
    const double tau_c =
        find_critical_time(cfg, cfg.shape, {lo, hi}, scan_step, resolution);
    emit(p, "tau_c = " + fmt(tau_c) + "\n");
    return 0;
}

int do_frictionless(const Params& p, double threshold, double threshold_frac) {
    const CycleConfig cfg = cycle_config_of(p, parse_pulse(p.pulses.front()),
                                            p.two_i.front(), 1.0);
    double limit = threshold;
    if (threshold_frac > 0.0)
        limit = threshold_frac * adiabatic_limit_cycle(cfg).net_work;
    const std::optional<double> found =
        frictionless_scan(cfg, cfg.shape, make_tau_grid(p), limit);

    std::string text = "threshold = " + fmt(limit) + "\n";
    text += found ? "first frictionless tau = " + fmt(*found) + "\n"
                  : std::string("none within grid\n");
    emit(p, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Params p;

    // The config file seeds the defaults, so flags parsed afterwards win.
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
    }
    if (!config_path.empty()) {
        try {
            load_config(config_path, p);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    CLI::App app{"finite-time quantum Otto cycle of a single driven spin"};
    app.require_subcommand(1);

    double lo = 1.0, hi = 100.0, scan_step = 0.25, resolution = 1e-3;
    double threshold = 0.0, threshold_frac = 0.0;

    auto add_common = [&](CLI::App* sub, bool many_spins, bool many_pulses) {
        sub->add_option("--config", config_path, "JSON config file (applied before flags)");
        sub->add_option("--b0", p.b0, "static longitudinal field");
        sub->add_option("--b1", p.b1, "transverse field on the hot isochore");
        sub->add_option("--b2", p.b2, "transverse field on the cold isochore");
        sub->add_option("--t1", p.t1, "hot bath temperature");
        sub->add_option("--t2", p.t2, "cold bath temperature");
        sub->add_option("--two-i", p.two_i,
                        many_spins ? "spin as 2I (comma list)" : "spin as 2I")
            ->delimiter(',');
        sub->add_option("--pulses", p.pulses,
                        many_pulses ? "pulses: sin, pow, pow:<n> (comma list)"
                                    : "pulse: sin, pow, or pow:<n>")
            ->delimiter(',');
        sub->add_option("--initial-steps", p.initial_steps, "integrator starting step count");
        sub->add_option("--tol", p.tol, "integrator trace-norm tolerance");
        sub->add_option("--max-doublings", p.max_doublings, "integrator refinement limit");
        sub->add_option("--out", p.out, "output path, or - for stdout");
    };
    auto add_tau_grid = [&](CLI::App* sub) {
        sub->add_option("--tau-start", p.tau_start, "first tau of the grid");
        sub->add_option("--tau-stop", p.tau_stop, "last tau of the grid");
        sub->add_option("--tau-points", p.tau_points, "number of grid points");
        sub->add_option("--tau-spacing", p.tau_spacing, "linear or log");
    };

    CLI::App* cycle_cmd =
        app.add_subcommand("cycle", "run one finite-time cycle, print JSON observables");
    add_common(cycle_cmd, false, false);
    cycle_cmd->add_option("--tau", p.tau, "total adiabatic time");

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "run a tau/pulse/spin grid, print or write CSV");
    add_common(sweep_cmd, true, true);
    add_tau_grid(sweep_cmd);
    sweep_cmd->add_option("--threads", p.threads, "worker threads (output is order-stable)");

    CLI::App* bounds_cmd = app.add_subcommand(
        "bounds", "print analytic work bounds, efficiency ceilings, work condition");
    add_common(bounds_cmd, false, false);

    CLI::App* tauc_cmd =
        app.add_subcommand("tauc", "locate the first tau where net work turns positive");
    add_common(tauc_cmd, false, false);
    tauc_cmd->add_option("--lo", lo, "bracket start");
    tauc_cmd->add_option("--hi", hi, "bracket end");
    tauc_cmd->add_option("--scan-step", scan_step, "upward scan step");
    tauc_cmd->add_option("--resolution", resolution, "bisection bracket width");

    CLI::App* fric_cmd = app.add_subcommand(
        "frictionless", "find the first grid tau with friction below a threshold");
    add_common(fric_cmd, false, false);
    add_tau_grid(fric_cmd);
    fric_cmd->add_option("--threshold", threshold, "absolute friction threshold");
    fric_cmd->add_option("--threshold-frac", threshold_frac,
                         "threshold as a fraction of the quasi-static work");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cycle_cmd->parsed()) return do_cycle(p);
        if (sweep_cmd->parsed()) return do_sweep(p);
        if (bounds_cmd->parsed()) return do_bounds(p);
        if (tauc_cmd->parsed()) return do_tauc(p, lo, hi, scan_step, resolution);
        if (fric_cmd->parsed()) return do_frictionless(p, threshold, threshold_frac);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
