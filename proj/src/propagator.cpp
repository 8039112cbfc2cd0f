#include "spinotto/propagator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace spinotto {

namespace {

// Per-step factor exp(-i H dt) for H = b0*Iz + b*Ix, evaluated in closed
// form: H = delta * R Iz R^dagger with delta = sqrt(b0^2 + b^2),
// R = exp(-i theta Iy), theta = atan2(b, b0). The Iy eigenbasis is
// diagonalized once per stroke; each step is then three small matrix
// products on preallocated buffers (the step counts reach ~10^6, so the
// inner loop must not allocate).
class StepKernel {
public:
    explicit StepKernel(const SpinOperators& ops) : dim_(ops.dimension()) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ops.iy);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigendecomposition of Iy failed");
        vy_ = es.eigenvectors();
        vy_adj_ = vy_.adjoint();
        my_ = es.eigenvalues();
        mz_ = ops.iz.diagonal().real();
        a_.resize(dim_, dim_);
        rot_.resize(dim_, dim_);
        b_.resize(dim_, dim_);
        step_.resize(dim_, dim_);
        acc_.resize(dim_, dim_);
        phase_y_.resize(dim_);
        phase_z_.resize(dim_);
    }

    // u <- exp(-i (b0*Iz + b*Ix) dt) * u
    void advance(ComplexMatrix& u, double b0, double b, double dt) {
        const double delta = std::hypot(b0, b);
        const double theta = std::atan2(b, b0);
        for (int j = 0; j < dim_; ++j) phase_y_(j) = std::polar(1.0, -theta * my_(j));
        for (int j = 0; j < dim_; ++j) phase_z_(j) = std::polar(1.0, -delta * dt * mz_(j));
        a_.noalias() = vy_ * phase_y_.asDiagonal();
        rot_.noalias() = a_ * vy_adj_;
        b_.noalias() = rot_ * phase_z_.asDiagonal();
        step_.noalias() = b_ * rot_.adjoint();
        acc_.noalias() = step_ * u;
        u.swap(acc_);
    }

    // u <- u (3 - u^dagger u) / 2, one Newton step toward the polar unitary
    // factor. Rounding in the step products above leaves a small bias that
    // grows linearly with the step count (~1e-15 per step), so long strokes
    // drift measurably from unitarity unless it is periodically removed.
    void renormalize(ComplexMatrix& u) {
        a_.noalias() = u.adjoint() * u;
        a_ *= -0.5;
        a_.diagonal().array() += 1.5;
        acc_.noalias() = u * a_;
        u.swap(acc_);
    }

private:
    int dim_;
    ComplexMatrix vy_, vy_adj_;
    RealVector my_, mz_;
    ComplexMatrix a_, rot_, b_, step_, acc_;
    Eigen::VectorXcd phase_y_, phase_z_;
};

}  // namespace

void IntegratorConfig::validate() const {
    if (initial_steps < 2) throw std::invalid_argument("integrator needs initial_steps >= 2");
    if (!(convergence_tol > 0.0))
        throw std::invalid_argument("integrator needs convergence_tol > 0");
    if (max_doublings < 1 || max_doublings > 30)
        throw std::invalid_argument("integrator needs 1 <= max_doublings <= 30");
    if ((static_cast<long long>(initial_steps) << max_doublings) >
        std::numeric_limits<int>::max())
        throw std::invalid_argument("initial_steps << max_doublings overflows the step count");
}

ConvergenceError::ConvergenceError(double last_distance, int steps)
    : std::runtime_error("stroke integration did not converge: trace-norm distance " +
                         std::to_string(last_distance) + " above tolerance at " +
                         std::to_string(steps) + " steps"),
      last_distance_(last_distance),
      steps_(steps) {}

ComplexMatrix stroke_propagator(const FieldProtocol& proto, const SpinOperators& ops,
                                int steps) {
    if (steps < 1) throw std::invalid_argument("stroke propagator needs steps >= 1");
    const double dt = proto.stroke_duration() / steps;
    StepKernel kernel(ops);
    ComplexMatrix u = ComplexMatrix::Identity(ops.dimension(), ops.dimension());
    for (int k = 0; k < steps; ++k) {
        const double t_mid = (k + 0.5) * dt;
        kernel.advance(u, proto.b0, field_value(proto, t_mid), dt);
        if ((k & 1023) == 1023) kernel.renormalize(u);
    }
    kernel.renormalize(u);
    return u;
}

DensityMatrix evolve_fixed(const DensityMatrix& rho0, const FieldProtocol& proto,
                           const SpinOperators& ops, int steps) {
    if (rho0.dimension() != ops.dimension())
        throw std::invalid_argument("state and spin operator dimensions differ");
    const ComplexMatrix u = stroke_propagator(proto, ops, steps);
    return DensityMatrix(u * rho0.matrix() * u.adjoint());
}

StrokeResult evolve_stroke(const DensityMatrix& rho0, const FieldProtocol& proto,
                           const SpinOperators& ops, const IntegratorConfig& cfg) {
    cfg.validate();
    int steps = cfg.initial_steps;
    DensityMatrix prev = evolve_fixed(rho0, proto, ops, steps);
    double distance = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < cfg.max_doublings; ++k) {
        const int next = steps * 2;
        DensityMatrix cur = evolve_fixed(rho0, proto, ops, next);
        distance = trace_distance(cur, prev);
        if (distance < cfg.convergence_tol) return {std::move(cur), next, true, distance};
        prev = std::move(cur);
        steps = next;
    }
    return {std::move(prev), steps, false, distance};
}

DensityMatrix evolve(const DensityMatrix& rho0, const FieldProtocol& proto,
                     const SpinOperators& ops, const IntegratorConfig& cfg) {
    StrokeResult r = evolve_stroke(rho0, proto, ops, cfg);
    if (!r.converged) throw ConvergenceError(r.last_distance, r.steps);
    return std::move(r.rho);
}

AdiabaticTarget adiabatic_target(const DensityMatrix& rho0, const Hamiltonian& h_i,
                                 const Hamiltonian& h_f) {
    if (rho0.dimension() != h_i.matrix.rows() || rho0.dimension() != h_f.matrix.rows())
        throw std::invalid_argument("state and Hamiltonian dimensions differ");
    if (h_i.gap < kDegenerateGap || h_f.gap < kDegenerateGap)
        throw std::invalid_argument(
            "degenerate spectrum: populations cannot be tracked through the stroke");

    EigenSystem ei = eigensystem_of(h_i.matrix);
    const ComplexMatrix in_basis = ei.eigenvectors.adjoint() * rho0.matrix() * ei.eigenvectors;
    const int d = rho0.dimension();
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (r != c && std::abs(in_basis(r, c)) > 1e-8)
                throw std::invalid_argument(
                    "initial state carries coherence in the starting eigenbasis; "
                    "its populations do not define a quasi-static target");

    const RealVector p = in_basis.diagonal().real();
    EigenSystem ef = eigensystem_of(h_f.matrix);
    ComplexMatrix rho_a = ef.eigenvectors * p.asDiagonal() * ef.eigenvectors.adjoint();

    // The levels are equally spaced, so a thermal population profile has a
    // single inverse temperature, readable off the extreme populations; the
    // gap rescaling maps it onto the final spectrum.
    const Eigen::Index last = p.size() - 1;
    const double beta_i =
        std::log(p(0) / p(last)) / (ei.eigenvalues(last) - ei.eigenvalues(0));
    const double beta_a = beta_i * h_i.gap / h_f.gap;
    return AdiabaticTarget{DensityMatrix(std::move(rho_a)), beta_a};
}

DensityMatrix sudden_target(const DensityMatrix& rho0) { return rho0; }

double friction_work(const DensityMatrix& rho_tau, const AdiabaticTarget& target) {
    if (rho_tau.dimension() != target.rho_a.dimension())
        throw std::invalid_argument("state and target dimensions differ");
    if (!(target.beta_a > 0.0))
        throw std::invalid_argument("friction work needs a target at positive beta_a");
    return relative_entropy(rho_tau, target.rho_a) / target.beta_a;
}

}  // namespace spinotto
