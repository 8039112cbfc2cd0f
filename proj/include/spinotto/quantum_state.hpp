#pragma once

#include "spinotto/pulse_protocols.hpp"

namespace spinotto {

// Below this gap the spectrum is numerically degenerate and no unique
// ascending eigenbasis exists; basis-dependent quantities reject such inputs.
inline constexpr double kDegenerateGap = 1e-12;

// Bath temperature in units with k_B = 1.
class BathTemperature {
public:
    explicit BathTemperature(double t);  // requires t > 0

    double t() const { return t_; }
    double beta() const { return 1.0 / t_; }

private:
    double t_;
};

// Hermitian, unit-trace, positive-semidefinite complex matrix; validated on
// construction (Hermitian and trace to 1e-10, eigenvalues >= -1e-10).
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return mat_; }
    int dimension() const { return static_cast<int>(mat_.rows()); }

private:
    ComplexMatrix mat_;
};

// Eigendecomposition with ascending eigenvalues and deterministic phases:
// each column's largest-magnitude entry is rotated to be real and positive.
struct EigenSystem {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;  // orthonormal columns
};

// Caller must pass a Hermitian matrix.
EigenSystem eigensystem_of(const ComplexMatrix& hermitian);

// exp(-H/T)/Z through the eigendecomposition of H (exponents shifted by the
// ground energy so extreme temperatures stay in range).
DensityMatrix gibbs_state(const Hamiltonian& h, BathTemperature temp);

// Tr(rho H).
double internal_energy(const DensityMatrix& rho, const Hamiltonian& h);

// -Tr(rho ln rho) in nats, with 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

// Shannon entropy (nats) of the populations of rho in the ascending
// eigenbasis of h; equals the von Neumann entropy iff rho is diagonal there.
double energy_entropy(const DensityMatrix& rho, const Hamiltonian& h);

// Tr(rho ln rho - rho ln sigma); throws when sigma is (nearly) singular,
// where the divergence is ill-defined.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// |<e_i|rho|e_j>| for eigenvectors of h in ascending-eigenvalue order, i != j.
double coherence(const DensityMatrix& rho, const Hamiltonian& h, int i, int j);

// (1/2) sum of |eigenvalues| of a - b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace spinotto
