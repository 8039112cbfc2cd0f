#include "spinotto/quantum_state.hpp"

#include <cmath>
#include <stdexcept>

namespace spinotto {

namespace {

// Validation tolerances for DensityMatrix construction.
constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigenvalueFloor = -1e-10;

// Populations at or below this are treated as exact zeros in p ln p.
constexpr double kZeroPopulation = 1e-15;

// Second arguments of the relative entropy with eigenvalues at or below
// this are treated as singular.
constexpr double kSingularEigenvalue = 1e-14;

double shannon(const RealVector& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p(i) > kZeroPopulation) s -= p(i) * std::log(p(i));
    return s;
}

void require_same_dimension(const DensityMatrix& rho, const Hamiltonian& h) {
    if (rho.dimension() != h.matrix.rows())
        throw std::invalid_argument("state and Hamiltonian dimensions differ");
}

void require_resolvable_spectrum(const Hamiltonian& h) {
    if (h.gap < kDegenerateGap)
        throw std::invalid_argument(
            "degenerate spectrum: no unique ascending eigenbasis at gap < 1e-12");
}

}  // namespace

BathTemperature::BathTemperature(double t) : t_(t) {
    if (!(t > 0.0)) throw std::invalid_argument("bath temperature must be positive");
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
        throw std::invalid_argument("density matrix must be square and non-empty");
    if (!is_hermitian(mat_, kHermitianTol))
        throw std::invalid_argument("density matrix is not Hermitian");
    const Complex tr = mat_.trace();
    if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol)
        throw std::invalid_argument("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("density matrix eigendecomposition failed");
    if (es.eigenvalues().minCoeff() < kEigenvalueFloor)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

EigenSystem eigensystem_of(const ComplexMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");

    ComplexMatrix v = es.eigenvectors();
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index pivot = 0;
        v.col(c).cwiseAbs().maxCoeff(&pivot);
        const Complex z = v(pivot, c);
        const double mag = std::abs(z);
        if (mag > 0.0) v.col(c) *= std::conj(z) / mag;
    }
    return EigenSystem{es.eigenvalues(), std::move(v)};
}

DensityMatrix gibbs_state(const Hamiltonian& h, BathTemperature temp) {
    EigenSystem es = eigensystem_of(h.matrix);
    RealVector w =
        (-(es.eigenvalues.array() - es.eigenvalues.minCoeff()) * temp.beta()).exp();
    w /= w.sum();
    return DensityMatrix(es.eigenvectors * w.asDiagonal() * es.eigenvectors.adjoint());
}

double internal_energy(const DensityMatrix& rho, const Hamiltonian& h) {
    require_same_dimension(rho, h);
    return (rho.matrix() * h.matrix).trace().real();
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    return shannon(es.eigenvalues());
}

double energy_entropy(const DensityMatrix& rho, const Hamiltonian& h) {
    require_same_dimension(rho, h);
    require_resolvable_spectrum(h);
    EigenSystem es = eigensystem_of(h.matrix);
    RealVector p =
        (es.eigenvectors.adjoint() * rho.matrix() * es.eigenvectors).diagonal().real();
    return shannon(p);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dimension() != sigma.dimension())
        throw std::invalid_argument("relative entropy needs states of equal dimension");

    EigenSystem sig = eigensystem_of(sigma.matrix());
    if (sig.eigenvalues.minCoeff() <= kSingularEigenvalue)
        throw std::invalid_argument(
            "relative entropy is ill-defined for a (nearly) singular second argument");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(rho.matrix(), Eigen::EigenvaluesOnly);
    double tr_rho_ln_rho = 0.0;
    for (Eigen::Index i = 0; i < er.eigenvalues().size(); ++i) {
        const double lam = er.eigenvalues()(i);
        if (lam > kZeroPopulation) tr_rho_ln_rho += lam * std::log(lam);
    }

    // Tr[rho ln sigma] = sum_n ln(s_n) <v_n|rho|v_n>.
    RealVector pops =
        (sig.eigenvectors.adjoint() * rho.matrix() * sig.eigenvectors).diagonal().real();
    double tr_rho_ln_sigma = 0.0;
    for (Eigen::Index n = 0; n < pops.size(); ++n)
        tr_rho_ln_sigma += pops(n) * std::log(sig.eigenvalues(n));

    return tr_rho_ln_rho - tr_rho_ln_sigma;
}

double coherence(const DensityMatrix& rho, const Hamiltonian& h, int i, int j) {
    require_same_dimension(rho, h);
    require_resolvable_spectrum(h);
    const int d = rho.dimension();
    if (i < 0 || j < 0 || i >= d || j >= d)
        throw std::out_of_range("coherence level index out of range");
    if (i == j) throw std::invalid_argument("coherence needs two distinct levels");
    EigenSystem es = eigensystem_of(h.matrix);
    const Complex elem =
        (es.eigenvectors.col(i).adjoint() * rho.matrix() * es.eigenvectors.col(j))(0, 0);
    return std::abs(elem);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dimension() != b.dimension())
        throw std::invalid_argument("trace distance needs states of equal dimension");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix() - b.matrix(),
                                                    Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace spinotto
