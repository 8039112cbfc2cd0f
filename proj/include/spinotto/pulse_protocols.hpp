#pragma once

#include <string>

#include "spinotto/spin_algebra.hpp"

namespace spinotto {

// Time dependence of the transverse field over one adiabatic stroke.
class PulseShape {
public:
    enum class Family { Sinusoidal, Power };

    static PulseShape sinusoidal();
    static PulseShape power(double exponent);  // requires exponent > 0

    Family family() const { return family_; }
    double exponent() const { return exponent_; }  // meaningful for Power only
    std::string tag() const;                       // "sin" or "pow"

private:
    PulseShape(Family family, double exponent) : family_(family), exponent_(exponent) {}

    Family family_;
    double exponent_;
};

// One adiabatic stroke's drive. The stroke lasts total_tau/2 (the cycle
// allots total_tau to the two adiabats together); both pulse families reach
// b_end exactly at t = total_tau/2.
struct FieldProtocol {
    double b0;         // static longitudinal field
    double b_start;    // transverse field at t = 0
    double b_end;      // transverse field at t = total_tau/2
    double total_tau;  // total adiabatic time of the cycle, > 0
    PulseShape shape;

    FieldProtocol(double b0, double b_start, double b_end, double total_tau, PulseShape shape);

    double stroke_duration() const { return 0.5 * total_tau; }
};

// B(t): sinusoidal -> b_start + (b_end - b_start) sin(pi t / tau),
//       power(n)   -> b_start + (b_end - b_start) (2t / tau)^n.
// Throws std::out_of_range for t outside [0, tau/2].
double field_value(const FieldProtocol& proto, double t);

// Instantaneous Hamiltonian b0*Iz + b*Ix together with its level spacing.
// The spectrum is m*gap for m = -I..I, so adjacent levels sit gap apart.
struct Hamiltonian {
    ComplexMatrix matrix;
    double gap;  // delta = sqrt(b0^2 + b^2)
};

Hamiltonian hamiltonian_at(double b0, double b, const SpinOperators& ops);
Hamiltonian hamiltonian_at(const FieldProtocol& proto, double t, const SpinOperators& ops);

}  // namespace spinotto
