#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <optional>
#include <random>

#include "spinotto/otto_cycle.hpp"
#include "test_support.hpp"

using namespace spinotto;

namespace {

CycleConfig reference_config(double tau, PulseShape shape = PulseShape::sinusoidal(),
                       int two_i = 1) {
    return CycleConfig{0.5,
                       0.5,
                       0.05,
                       BathTemperature(2.0),
                       BathTemperature(1.0),
                       SpinQuantumNumber(two_i),
                       shape,
                       tau,
                       IntegratorConfig{}};
}

// Scalar oracles for the two closed-form limits, valid for any level count.
// The spectrum is m*delta with m = -I..I, so thermal expectations reduce to
// a one-dimensional sum over m.
double mean_level(double beta, double delta, int two_i) {
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= two_i; ++k) {
        const double m = -0.5 * two_i + k;
        const double w = std::exp(-beta * delta * m);
        num += m * w;
        den += w;
    }
    return num / den;
}

double multilevel_adiabatic_work(double b0, double b1, double b2, double t1, double t2,
                                 int two_i) {
    const double d1 = std::hypot(b0, b1);
    const double d2 = std::hypot(b0, b2);
    return (d1 - d2) *
           (mean_level(1.0 / t1, d1, two_i) - mean_level(1.0 / t2, d2, two_i));
}

double multilevel_sudden_work(double b0, double b1, double b2, double t1, double t2,
                              int two_i) {
    const double d1 = std::hypot(b0, b1);
    const double d2 = std::hypot(b0, b2);
    // Tr[(H_i - H_f) rho_thermal] with H_i - H_f proportional to Ix, and
    // <Ix> = (b/delta) <m> in a thermal state of b0*Iz + b*Ix.
    const double w_exp = (b1 - b2) * (b1 / d1) * mean_level(1.0 / t1, d1, two_i);
    const double w_comp = (b2 - b1) * (b2 / d2) * mean_level(1.0 / t2, d2, two_i);
    return w_exp + w_comp;
}

}  // namespace

TEST_CASE("the quasi-static cycle reproduces the closed-form work and efficiency") {
    const CycleResult r = adiabatic_limit_cycle(reference_config(10.0));
    const double analytic = testsup::qubit_adiabatic_work(0.5, 0.5, 0.05, 2.0, 1.0);
    CHECK(std::abs(r.net_work - analytic) < 1e-10);
    CHECK(std::abs(r.net_work - 0.007277306669927315) < 1e-12);
    CHECK(r.efficiency.has_value());
    CHECK(std::abs(*r.efficiency - max_efficiency(0.5, 0.5, 0.05)) < 1e-12);
    CHECK(std::abs(*r.efficiency - 0.2893664798224054) < 1e-12);
    CHECK(r.q_hot > 0.0);
    CHECK(r.delta_s_e == 0.0);
    CHECK(r.w_fric_total == 0.0);
    CHECK(r.coherence_expansion == 0.0);
    CHECK(std::abs(r.net_work - (r.q_hot + r.q_cold)) < 1e-12);
}

TEST_CASE("the sudden cycle reproduces the closed-form work") {
    const CycleResult r = sudden_limit_cycle(reference_config(10.0));
    const double analytic = testsup::qubit_sudden_work(0.5, 0.5, 0.05, 2.0, 1.0);
    CHECK(std::abs(r.net_work - analytic) < 1e-10);
    CHECK(std::abs(r.net_work - (-0.022326092873366656)) < 1e-12);
    CHECK(r.delta_s_e > 1e-6);      // projecting onto tilted bases creates entropy
    CHECK(r.w_fric_total > 1e-6);   // and costs friction work
    CHECK(r.coherence_expansion > 1e-6);
    if (r.efficiency) CHECK(std::abs(*r.efficiency - r.net_work / r.q_hot) < 1e-12);
}

TEST_CASE("both limits extend to more levels") {
    for (int two_i : {1, 2, 3, 4}) {
        const CycleConfig cfg = reference_config(10.0, PulseShape::sinusoidal(), two_i);
        CHECK(std::abs(adiabatic_limit_cycle(cfg).net_work -
                       multilevel_adiabatic_work(0.5, 0.5, 0.05, 2.0, 1.0, two_i)) <
              1e-12);
        CHECK(std::abs(sudden_limit_cycle(cfg).net_work -
                       multilevel_sudden_work(0.5, 0.5, 0.05, 2.0, 1.0, two_i)) <
              1e-12);
    }
    // spot values for the larger spins
    CHECK(std::abs(adiabatic_limit_cycle(reference_config(10.0, PulseShape::sinusoidal(), 2))
                       .net_work -
                   0.018559778) < 1e-8);
    CHECK(std::abs(adiabatic_limit_cycle(reference_config(10.0, PulseShape::sinusoidal(), 3))
                       .net_work -
                   0.03276247488) < 1e-8);
    CHECK(std::abs(adiabatic_limit_cycle(reference_config(10.0, PulseShape::sinusoidal(), 4))
                       .net_work -
                   0.04867164479) < 1e-8);
    CHECK(std::abs(sudden_limit_cycle(reference_config(10.0, PulseShape::sinusoidal(), 2))
                       .net_work -
                   (-0.05907723214)) < 1e-8);
    CHECK(std::abs(sudden_limit_cycle(reference_config(10.0, PulseShape::sinusoidal(), 3))
                       .net_work -
                   (-0.1095818962)) < 1e-8);
    CHECK(std::abs(sudden_limit_cycle(reference_config(10.0, PulseShape::sinusoidal(), 4))
                       .net_work -
                   (-0.172938413)) < 1e-8);
}

TEST_CASE("the sudden cycle never outperforms the quasi-static one") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        const CycleConfig cfg = testsup::random_cycle_config(rng);
        const double slow = adiabatic_limit_cycle(cfg).net_work;
        const CycleResult fast = sudden_limit_cycle(cfg);
        CHECK(fast.net_work <= slow + 1e-10);
        // the shortfall is exactly the friction work paid in the two strokes
        CHECK(std::abs((slow - fast.net_work) - fast.w_fric_total) < 1e-9);
    }
}

TEST_CASE("an unchanged field exchanges no net work") {
    for (double t_cold : {1.0, 2.0}) {
        const CycleConfig cfg{0.5,
                              0.5,
                              0.5,
                              BathTemperature(2.0),
                              BathTemperature(t_cold),
                              SpinQuantumNumber(1),
                              PulseShape::sinusoidal(),
                              4.0,
                              IntegratorConfig{}};
        const CycleResult r = run_cycle(cfg);
        CHECK(std::abs(r.net_work) < 1e-12);
        CHECK(std::abs(r.delta_s_e) < 1e-12);
        CHECK(std::abs(r.w_fric_total) < 1e-10);
        CHECK(std::abs(r.coherence_expansion) < 1e-12);
        if (t_cold == 2.0) {
            // equal temperatures: nothing moves at all
            CHECK(std::abs(r.q_hot) < 1e-12);
            CHECK(std::abs(r.q_cold) < 1e-12);
        } else {
            // unequal baths still trade heat through the static system
            CHECK(r.q_hot > 1e-3);
            CHECK(std::abs(r.q_hot + r.q_cold) < 1e-12);
        }
    }
}

TEST_CASE("a very slow drive approaches the quasi-static cycle") {
    const CycleResult r = run_cycle(reference_config(1000.0));
    const double w_up = 0.007277306669927315;
    CHECK(r.converged);
    CHECK(std::abs(r.net_work - w_up) < 0.01 * w_up);
    CHECK(std::abs(r.net_work - 0.00727587) < 5e-8);
    CHECK(r.efficiency.has_value());
    CHECK(*r.efficiency <= 0.2893664798224054 + 1e-9);
    CHECK(std::abs(*r.efficiency - 0.2893664798224054) < 5e-4);
    CHECK(r.delta_s_e < 1e-4);
    CHECK(r.delta_s_e >= -1e-10);
    CHECK(r.w_fric_total < 1e-5);
    CHECK(r.w_fric_total >= -1e-12);
}

TEST_CASE("a fast drive generates coherence and friction") {
    const CycleResult r = run_cycle(reference_config(1.0));
    CHECK(r.converged);
    CHECK(r.coherence_expansion > 1e-4);
    CHECK(r.w_fric_total > 1e-4);
    CHECK(r.delta_s_e > 1e-6);
    CHECK(r.net_work < 0.0);  // too fast to extract work at these settings
}

TEST_CASE("cycle bookkeeping is internally consistent") {
    std::mt19937_64 rng(90210);
    for (int trial = 0; trial < 25; ++trial) {
        const CycleConfig cfg = testsup::random_cycle_config(rng);
        const CycleResult r = run_cycle_best_effort(cfg);
        CHECK(r.converged);
        CHECK(std::abs(r.net_work - (r.w_expansion + r.w_compression)) < 1e-14);
        CHECK(std::abs(r.net_work - (r.q_hot + r.q_cold)) < 1e-12);
        CHECK(r.delta_s_e >= -1e-8);
        CHECK(r.w_fric_total >= -1e-10);
        if (r.efficiency) {
            CHECK(r.q_hot > 0.0);
            CHECK(std::abs(*r.efficiency - r.net_work / r.q_hot) < 1e-12);
        }
        // finite-time work is the quasi-static work minus the friction paid
        const double slow = adiabatic_limit_cycle(cfg).net_work;
        CHECK(std::abs((slow - r.net_work) - r.w_fric_total) < 1e-6);
    }
}

TEST_CASE("larger spins move more work and pay more friction") {
    const CycleResult small = run_cycle(reference_config(1.0));
    const CycleResult large = run_cycle(reference_config(1.0, PulseShape::sinusoidal(), 2));
    CHECK(std::abs(large.net_work) > std::abs(small.net_work));
    CHECK(large.w_fric_total > small.w_fric_total);
}

TEST_CASE("efficiency is undefined when no heat flows in from the hot bath") {
    CycleConfig cfg = reference_config(2.0);
    cfg.t_hot = BathTemperature(0.05);
    cfg.t_cold = BathTemperature(1.0);
    const CycleResult r = run_cycle(cfg);
    CHECK(r.q_hot < 0.0);
    CHECK_FALSE(r.efficiency.has_value());
    CHECK(r.net_work < 0.0);
}

TEST_CASE("the efficiency ceiling follows from the two gaps") {
    CHECK(std::abs(max_efficiency(0.5, 0.5, 0.05) - 0.2893664798224054) < 1e-12);
    CHECK(max_efficiency(0.5, 0.3, 0.3) == 0.0);
    CHECK(max_efficiency(0.01, 5.0, 0.0) > 0.99);
    CHECK_THROWS_AS(max_efficiency(0.0, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("the carnot bound comes from the bath temperatures") {
    CHECK(carnot_efficiency(BathTemperature(2.0), BathTemperature(1.0)) == 0.5);
    CHECK(carnot_efficiency(BathTemperature(3.0), BathTemperature(3.0)) == 0.0);
}

TEST_CASE("the positive-work condition separates engine from non-engine settings") {
    CHECK(positive_work_condition(reference_config(10.0)));

    CycleConfig equal_temps = reference_config(10.0);
    equal_temps.t_cold = BathTemperature(2.0);  // same as t_hot, gaps differ
    CHECK_FALSE(positive_work_condition(equal_temps));

    CycleConfig equal_gaps{0.5,
                           0.3,
                           0.3,
                           BathTemperature(2.0),
                           BathTemperature(1.0),
                           SpinQuantumNumber(1),
                           PulseShape::sinusoidal(),
                           10.0,
                           IntegratorConfig{}};
    CHECK(positive_work_condition(equal_gaps));
}
