#include "spinotto/pulse_protocols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinotto {

PulseShape PulseShape::sinusoidal() { return PulseShape(Family::Sinusoidal, 0.0); }

PulseShape PulseShape::power(double exponent) {
    if (!(exponent > 0.0)) throw std::invalid_argument("power pulse exponent must be > 0");
    return PulseShape(Family::Power, exponent);
}

std::string PulseShape::tag() const {
    return family_ == Family::Sinusoidal ? "sin" : "pow";
}

FieldProtocol::FieldProtocol(double b0, double b_start, double b_end, double total_tau,
                             PulseShape shape)
    : b0(b0), b_start(b_start), b_end(b_end), total_tau(total_tau), shape(shape) {
    if (!(total_tau > 0.0)) throw std::invalid_argument("stroke needs total_tau > 0");
}

double field_value(const FieldProtocol& proto, double t) {
    const double half = proto.stroke_duration();
    if (!(t >= 0.0) || t > half * (1.0 + 1e-12))
        throw std::out_of_range("time outside the stroke interval [0, tau/2]");

    const double span = proto.b_end - proto.b_start;
    if (proto.shape.family() == PulseShape::Family::Sinusoidal)
        return proto.b_start + span * std::sin(std::numbers::pi * t / proto.total_tau);
    return proto.b_start + span * std::pow(t / half, proto.shape.exponent());
}

Hamiltonian hamiltonian_at(double b0, double b, const SpinOperators& ops) {
    return Hamiltonian{b0 * ops.iz + b * ops.ix, std::hypot(b0, b)};
}

Hamiltonian hamiltonian_at(const FieldProtocol& proto, double t, const SpinOperators& ops) {
    return hamiltonian_at(proto.b0, field_value(proto, t), ops);
}

}  // namespace spinotto
