#include "spinotto/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinotto {

SpinQuantumNumber::SpinQuantumNumber(int two_i) : two_i_(two_i) {
    if (two_i < 1)
        throw std::invalid_argument("spin quantum number needs 2I >= 1, got 2I = " +
                                    std::to_string(two_i));
}

SpinOperators spin_operators(SpinQuantumNumber spin) {
    const int d = spin.dimension();
    const double i_val = spin.value();

    // Row k of the basis is |m = I - k>; I+ connects |m> upward to |m+1>.
    ComplexMatrix plus = ComplexMatrix::Zero(d, d);
    for (int k = 1; k < d; ++k) {
        const double m = i_val - k;
        plus(k - 1, k) = std::sqrt(i_val * (i_val + 1.0) - m * (m + 1.0));
    }

    SpinOperators ops;
    ops.ix = 0.5 * (plus + plus.adjoint());
    ops.iy = Complex(0.0, -0.5) * (plus - plus.adjoint());
    ops.iz = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) ops.iz(k, k) = i_val - k;
    return ops;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("commutator needs square matrices of equal dimension");
    return a * b - b * a;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    if (m.size() == 0) return true;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace spinotto
