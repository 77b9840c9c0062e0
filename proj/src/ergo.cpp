#include "spinergo/ergo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace spinergo::ergo {

namespace {

void check_dims(const DensityMatrix& rho, const HamiltonianSpec& h) {
  if (rho.dim() != h.dim())
    throw DimensionMismatch("state and Hamiltonian dimensions differ");
}

// Indices of v sorted by descending value, ties by original index.
std::vector<Eigen::Index> descending_order(const RealVector& v) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return v(a) > v(b); });
  return idx;
}

double permutation_work(const RealVector& pops, const RealVector& energies,
                        const std::vector<Eigen::Index>& perm) {
  // Work of moving population pops(perm[k]) onto energy level k.
  double before = 0.0, after = 0.0;
  for (Eigen::Index k = 0; k < pops.size(); ++k) {
    before += pops(k) * energies(k);
    after += pops(perm[static_cast<std::size_t>(k)]) * energies(k);
  }
  return before - after;
}

}  // namespace

double mean_energy(const DensityMatrix& rho, const HamiltonianSpec& h) {
  check_dims(rho, h);
  const Complex tr = (rho.mat() * h.matrix()).trace();
  return tr.real();
}

DensityMatrix dephase(const DensityMatrix& rho, const HamiltonianSpec& h) {
  check_dims(rho, h);
  const Matrix& v = h.eigenvectors();
  Matrix in_basis = v.adjoint() * rho.mat() * v;
  Matrix diag = in_basis.diagonal().asDiagonal();
  return DensityMatrix(v * diag * v.adjoint());
}

double coherence(const DensityMatrix& rho, const HamiltonianSpec& h) {
  const double c = qmath::von_neumann_entropy(dephase(rho, h)) -
                   qmath::von_neumann_entropy(rho);
  return std::max(c, 0.0);
}

PassiveDecomposition passive_decomposition(const DensityMatrix& rho,
                                           const HamiltonianSpec& h) {
  check_dims(rho, h);
  qmath::EigSystem es = qmath::herm_eig(rho.mat());
  const auto order = descending_order(es.values);
  const Eigen::Index d = rho.dim();

  // U = sum_k |energy_k asc><rho-eigvec_k desc|
  Matrix u = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    u += h.eigenvectors().col(k) *
         es.vectors.col(order[static_cast<std::size_t>(k)]).adjoint();

  double passive_energy = 0.0;
  Matrix passive = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double p = es.values(order[static_cast<std::size_t>(k)]);
    passive_energy += p * h.energies()(k);
    passive += p * (h.eigenvectors().col(k) * h.eigenvectors().col(k).adjoint());
  }
  const double work = mean_energy(rho, h) - passive_energy;
  return PassiveDecomposition{DensityMatrix(passive), u,
                              std::max(work, 0.0)};
}

std::pair<Matrix, DensityMatrix> optimal_permutation(const DensityMatrix& rho,
                                                     const HamiltonianSpec& h) {
  check_dims(rho, h);
  const Eigen::Index d = rho.dim();
  const Matrix& v = h.eigenvectors();
  const Matrix in_basis = v.adjoint() * rho.mat() * v;
  RealVector pops = in_basis.diagonal().real();
  const auto order = descending_order(pops);

  // Permutation matrix in the energy basis: level k receives the population
  // that was on level order[k]. For odd permutations the lowest-energy row
  // carries a minus sign so the operator is a rotation (det +1), matching the
  // qubit swap |e><g| - |g><e|.
  Matrix perm = Matrix::Zero(d, d);
  bool visited_parity_odd = false;
  {
    std::vector<bool> seen(static_cast<std::size_t>(d), false);
    Eigen::Index transpositions = 0;
    for (Eigen::Index s = 0; s < d; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      Eigen::Index len = 0, cur = s;
      while (!seen[static_cast<std::size_t>(cur)]) {
        seen[static_cast<std::size_t>(cur)] = true;
        cur = order[static_cast<std::size_t>(cur)];
        ++len;
      }
      transpositions += len - 1;
    }
    visited_parity_odd = (transpositions % 2) != 0;
  }
  for (Eigen::Index k = 0; k < d; ++k)
    perm(k, order[static_cast<std::size_t>(k)]) = 1.0;
  if (visited_parity_odd) perm.row(0) *= -1.0;

  Matrix v_pi = v * perm * v.adjoint();
  DensityMatrix sigma(v_pi * rho.mat() * v_pi.adjoint());
  return {std::move(v_pi), std::move(sigma)};
}

double incoherent_ergotropy(const DensityMatrix& rho, const HamiltonianSpec& h) {
  check_dims(rho, h);
  const Matrix in_basis =
      h.eigenvectors().adjoint() * rho.mat() * h.eigenvectors();
  RealVector pops = in_basis.diagonal().real();
  const auto order = descending_order(pops);
  const double work = permutation_work(pops, h.energies(), order);

  if (rho.dim() <= 5) {
    // Exhaustive search over all permutations guards the sort-pairing claim.
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(rho.dim()));
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0.0;
    do {
      best = std::max(best, permutation_work(pops, h.energies(), perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (std::abs(best - work) > 1e-10)
      throw Error("sort-pairing disagrees with exhaustive permutation search");
  }
  return std::max(work, 0.0);
}

double coherent_ergotropy(const DensityMatrix& rho, const HamiltonianSpec& h) {
  auto [v_pi, sigma] = optimal_permutation(rho, h);
  return passive_decomposition(sigma, h).ergotropy;
}

DensityMatrix gibbs_state(const HamiltonianSpec& h, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw DomainError("beta must be finite and >= 0");
  const RealVector& e = h.energies();
  // Shift by the ground energy before exponentiating.
  RealVector w(e.size());
  double z = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    w(i) = std::exp(-beta * (e(i) - e(0)));
    z += w(i);
  }
  Matrix m = Matrix::Zero(e.size(), e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i)
    m += (w(i) / z) *
         (h.eigenvectors().col(i) * h.eigenvectors().col(i).adjoint());
  return DensityMatrix(m);
}

double beta_identity_residual(const DensityMatrix& rho, const HamiltonianSpec& h,
                              double beta) {
  const DensityMatrix rho_beta = gibbs_state(h, beta);
  const DensityMatrix delta = dephase(rho, h);
  const DensityMatrix p_rho = passive_decomposition(rho, h).passive_state;
  const DensityMatrix p_delta = passive_decomposition(delta, h).passive_state;
  const double lhs = beta * coherent_ergotropy(rho, h);
  const double rhs = coherence(rho, h) +
                     qmath::relative_entropy(p_delta, rho_beta) -
                     qmath::relative_entropy(p_rho, rho_beta);
  return std::abs(lhs - rhs);
}

ErgotropyReport ergotropy_report(const DensityMatrix& rho,
                                 const HamiltonianSpec& h) {
  ErgotropyReport r;
  r.mean_energy = mean_energy(rho, h);
  r.total = passive_decomposition(rho, h).ergotropy;
  r.incoherent = incoherent_ergotropy(rho, h);
  r.coherent = coherent_ergotropy(rho, h);
  r.coherence_nats = coherence(rho, h);
  const double span = h.span();
  if (span > 0.0) {
    r.total_norm = r.total / span;
    r.incoherent_norm = r.incoherent / span;
    r.coherent_norm = r.coherent / span;
    r.mean_energy_norm = (r.mean_energy - h.energies()(0)) / span;
  }
  return r;
}

}  // namespace spinergo::ergo
