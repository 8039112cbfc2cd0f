#pragma once

#include <complex>

#include <Eigen/Dense>

namespace spinotto {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Central tolerance knobs: structural = entrywise identities (Hermiticity,
// commutators), spectral = eigenvalue/eigenvector agreement.
struct Tolerances {
    double structural = 1e-12;
    double spectral = 1e-10;
};

inline constexpr Tolerances kTol{};

// Spin quantum number held as the integer 2I, so half-integer spins are exact.
class SpinQuantumNumber {
public:
    explicit SpinQuantumNumber(int two_i);
    int two_i() const { return two_i_; }
    int dimension() const { return two_i_ + 1; }
    double value() const { return 0.5 * two_i_; }

private:
    int two_i_;
};

// The three angular-momentum matrices for one spin, dimensionless (hbar = 1).
// Basis ordered by descending magnetic quantum number, so iz = diag(I, ..., -I).
struct SpinOperators {
    ComplexMatrix ix;
    ComplexMatrix iy;
    ComplexMatrix iz;

    int dimension() const { return static_cast<int>(iz.rows()); }
    double spin_value() const { return 0.5 * (dimension() - 1); }
};

// Build ix, iy, iz from the ladder elements <m+1|I+|m> = sqrt(I(I+1) - m(m+1)).
SpinOperators spin_operators(SpinQuantumNumber spin);

// ab - ba; throws on dimension mismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol = kTol.structural);

}  // namespace spinotto
