#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "spinergo/errors.hpp"

namespace spinergo::qmath {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kImag{0.0, 1.0};

// Tolerances shared across the toolkit. States are validated at 1e-12;
// eigendecompositions accept inputs Hermitian to 1e-10.
inline constexpr double kStateTol = 1e-12;
inline constexpr double kHermTol = 1e-10;

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

// d x d complex Hermitian unit-trace state; the carrier of all quantum-state
// data in the toolkit. Construction validates Hermiticity, trace and
// positivity (eigenvalues >= -1e-12).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  static DensityMatrix pure(const Vector& ket);
  static DensityMatrix maximally_mixed(Eigen::Index dim);
  static DensityMatrix diagonal(const RealVector& populations);

  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

// Energy eigenvalues (rad/us, ascending) plus an orthonormal eigenbasis.
// Defines work, passivity and the dephasing basis for a system.
class HamiltonianSpec {
 public:
  HamiltonianSpec(RealVector energies, Matrix eigenvectors);

  static HamiltonianSpec from_matrix(const Matrix& h);
  // Diagonal Hamiltonian in the computational basis; entries need not be
  // sorted, the canonical ascending order is established here.
  static HamiltonianSpec diagonal(const RealVector& entries);
  // The paper's qubit model diag(epsilon, 0) in the {|e>, |g>} basis.
  static HamiltonianSpec qubit(double epsilon);

  const RealVector& energies() const { return energies_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  Eigen::Index dim() const { return energies_.size(); }
  Matrix matrix() const;
  // Energy spread max - min; the normalization unit for reported energies.
  double span() const { return energies_(energies_.size() - 1) - energies_(0); }

 private:
  RealVector energies_;  // ascending
  Matrix eigenvectors_;  // columns, unitary to 1e-12
};

struct EigSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

// Hermitian eigendecomposition, m = V diag(values) V^dag. Throws NonHermitian
// when the symmetry defect exceeds 1e-10 (relative to the matrix scale).
EigSystem herm_eig(const Matrix& m);

// exp(scale * m). (Anti-)Hermitian generators go through the eigenbasis and
// are exactly unitary/positive; anything else falls back to scaling-and-
// squaring Pade.
Matrix matrix_exp(const Matrix& m, Complex scale = Complex{1.0, 0.0});

// Kronecker product with a's indices major.
Matrix tensor_product(const Matrix& a, const Matrix& b);

// Reduced state of subsystem `keep` (0 = A, 1 = B) of a (d_a*d_b)-dimensional
// state ordered A-major.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::pair<Eigen::Index, Eigen::Index> dims,
                            int keep);

// S(rho) = -sum lambda ln lambda, in nats.
double von_neumann_entropy(const DensityMatrix& rho);

// D(rho||sigma) in nats; +infinity when supp(rho) is not contained in
// supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace spinergo::qmath
