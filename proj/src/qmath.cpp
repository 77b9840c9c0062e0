#include "spinergo/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinergo::qmath {

namespace {

// Eigenvalues in [-1e-12, 0) are rounding debris from channel composition;
// clip to zero before entropies and square roots.
double clip_eigenvalue(double x) {
  if (x < 0.0 && x >= -kStateTol) return 0.0;
  return x;
}

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw DimensionMismatch("density matrix must be square and non-empty");
  const double scale = std::max(1.0, max_abs(m_));
  if (max_abs(m_ - m_.adjoint()) > kStateTol * scale)
    throw NonHermitian("density matrix not Hermitian within 1e-12");
  if (std::abs(m_.trace() - Complex{1.0, 0.0}) > 1e-12 * std::max(1.0, scale))
    throw DomainError("density matrix trace differs from 1 beyond 1e-12");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTol)
    throw DomainError("density matrix has eigenvalue below -1e-12");
}

DensityMatrix DensityMatrix::pure(const Vector& ket) {
  const double n = ket.norm();
  if (n == 0.0) throw DomainError("cannot normalize zero ket");
  Vector v = ket / n;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / double(dim));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& populations) {
  Matrix m = Matrix::Zero(populations.size(), populations.size());
  for (Eigen::Index i = 0; i < populations.size(); ++i) m(i, i) = populations(i);
  return DensityMatrix(m);
}

HamiltonianSpec::HamiltonianSpec(RealVector energies, Matrix eigenvectors)
    : energies_(std::move(energies)), eigenvectors_(std::move(eigenvectors)) {
  const Eigen::Index d = energies_.size();
  if (d == 0 || eigenvectors_.rows() != d || eigenvectors_.cols() != d)
    throw DimensionMismatch("Hamiltonian energies/eigenvectors size mismatch");
  if (max_abs(eigenvectors_ * eigenvectors_.adjoint() - Matrix::Identity(d, d)) >
      kStateTol * 10)
    throw DomainError("Hamiltonian eigenbasis not unitary within 1e-12");
  // Canonical ascending order; ties keep original column order.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return energies_(a) < energies_(b);
  });
  RealVector sorted(d);
  Matrix cols(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    sorted(k) = energies_(idx[static_cast<std::size_t>(k)]);
    cols.col(k) = eigenvectors_.col(idx[static_cast<std::size_t>(k)]);
  }
  energies_ = std::move(sorted);
  eigenvectors_ = std::move(cols);
}

HamiltonianSpec HamiltonianSpec::from_matrix(const Matrix& h) {
  EigSystem es = herm_eig(h);
  return HamiltonianSpec(es.values, es.vectors);
}

HamiltonianSpec HamiltonianSpec::diagonal(const RealVector& entries) {
  return HamiltonianSpec(entries,
                         Matrix::Identity(entries.size(), entries.size()));
}

HamiltonianSpec HamiltonianSpec::qubit(double epsilon) {
  RealVector e(2);
  e << epsilon, 0.0;
  return diagonal(e);
}

Matrix HamiltonianSpec::matrix() const {
  return eigenvectors_ * energies_.asDiagonal().toDenseMatrix().cast<Complex>() *
         eigenvectors_.adjoint();
}

EigSystem herm_eig(const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("eigendecomposition requires a square matrix");
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.adjoint()) > kHermTol * scale)
    throw NonHermitian("matrix not Hermitian within 1e-10");
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  return EigSystem{es.eigenvalues(), es.eigenvectors()};
}

Matrix matrix_exp(const Matrix& m, Complex scale) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("matrix exponential requires a square matrix");
  const Matrix a = scale * m;
  const double anorm = std::max(1.0, max_abs(a));
  if (max_abs(a - a.adjoint()) <= kStateTol * anorm) {
    EigSystem es = herm_eig(a);
    Vector phases(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
      phases(i) = std::exp(Complex{es.values(i), 0.0});
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  }
  if (max_abs(a + a.adjoint()) <= kStateTol * anorm) {
    // a = -i h with h Hermitian: unitary to machine precision by construction.
    EigSystem es = herm_eig(kImag * a);
    Vector phases(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
      phases(i) = std::exp(-kImag * es.values(i));
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  }
  return a.exp();
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::pair<Eigen::Index, Eigen::Index> dims,
                            int keep) {
  const auto [da, db] = dims;
  if (da * db != rho.dim())
    throw DimensionMismatch("partial trace dims do not factor the state");
  if (keep != 0 && keep != 1)
    throw DomainError("keep must be 0 (subsystem A) or 1 (subsystem B)");
  const Matrix& m = rho.mat();
  if (keep == 0) {
    Matrix out = Matrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index k = 0; k < db; ++k)
          out(i, j) += m(i * db + k, j * db + k);
    return DensityMatrix(out);
  }
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k)
        out(i, j) += m(k * db + i, k * db + j);
  return DensityMatrix(out);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    s -= xlnx(clip_eigenvalue(es.eigenvalues()(i)));
  return std::max(s, 0.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("relative entropy dimension mismatch");
  EigSystem er = herm_eig(rho.mat());
  EigSystem es = herm_eig(sigma.mat());
  const Eigen::Index d = rho.dim();

  // Support check: any sigma-kernel direction carrying rho weight => +inf.
  constexpr double kSupportTol = 1e-10;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (clip_eigenvalue(es.values(j)) > kStateTol) continue;
    const double w =
        (es.vectors.col(j).adjoint() * rho.mat() * es.vectors.col(j))(0, 0).real();
    if (w > kSupportTol) return std::numeric_limits<double>::infinity();
  }

  double tr_rho_ln_rho = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    tr_rho_ln_rho += xlnx(clip_eigenvalue(er.values(i)));

  double tr_rho_ln_sigma = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double p = clip_eigenvalue(er.values(i));
    if (p <= 0.0) continue;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double q = clip_eigenvalue(es.values(j));
      if (q <= 0.0) continue;  // overlap already verified negligible
      const double overlap = std::norm(es.vectors.col(j).dot(er.vectors.col(i)));
      tr_rho_ln_sigma += p * overlap * std::log(q);
    }
  }
  const double dkl = tr_rho_ln_rho - tr_rho_ln_sigma;
  return dkl < 0.0 && dkl >= -kStateTol ? 0.0 : dkl;
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("fidelity dimension mismatch");
  EigSystem er = herm_eig(rho.mat());
  Vector roots(er.values.size());
  for (Eigen::Index i = 0; i < er.values.size(); ++i)
    roots(i) = std::sqrt(clip_eigenvalue(er.values(i)));
  const Matrix sqrt_rho = er.vectors * roots.asDiagonal() * er.vectors.adjoint();
  const Matrix inner = sqrt_rho * sigma.mat() * sqrt_rho;
  EigSystem ei = herm_eig((inner + inner.adjoint()) / 2.0);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < ei.values.size(); ++i)
    tr += std::sqrt(clip_eigenvalue(ei.values(i)));
  return std::min(tr * tr, 1.0);
}

}  // namespace spinergo::qmath
