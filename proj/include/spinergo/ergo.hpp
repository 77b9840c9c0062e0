#pragma once

#include <utility>

#include "spinergo/qmath.hpp"

namespace spinergo::ergo {

using qmath::Complex;
using qmath::DensityMatrix;
using qmath::HamiltonianSpec;
using qmath::Matrix;
using qmath::RealVector;

// Passive state, the unitary that reaches it, and the work it releases.
// passive_state = U rho U^dag; no further unitary can lower its energy.
struct PassiveDecomposition {
  DensityMatrix passive_state;
  Matrix extraction_unitary;
  double ergotropy;  // rad/us, energy units of H
};

struct ErgotropyReport {
  double total = 0.0;
  double incoherent = 0.0;
  double coherent = 0.0;
  double coherence_nats = 0.0;
  double mean_energy = 0.0;
  // Same quantities divided by the Hamiltonian span (dimensionless).
  double total_norm = 0.0;
  double incoherent_norm = 0.0;
  double coherent_norm = 0.0;
  double mean_energy_norm = 0.0;
};

// Tr[rho H].
double mean_energy(const DensityMatrix& rho, const HamiltonianSpec& h);

// Energy-basis diagonal projection of rho.
DensityMatrix dephase(const DensityMatrix& rho, const HamiltonianSpec& h);

// Relative-entropy coherence C(rho) = S(dephase(rho)) - S(rho), nats.
double coherence(const DensityMatrix& rho, const HamiltonianSpec& h);

// Pairs descending eigenvalues of rho with ascending energies. Degenerate
// values tie-break by original index (stable); any tie-break gives the same
// ergotropy, only the unitary differs.
PassiveDecomposition passive_decomposition(const DensityMatrix& rho,
                                           const HamiltonianSpec& h);

// The optimal coherence-preserving extraction: a signed permutation of
// energy eigenvectors V and sigma = V rho V^dag whose populations descend as
// energy ascends. For the qubit swap this is |e><g| - |g><e|.
std::pair<Matrix, DensityMatrix> optimal_permutation(const DensityMatrix& rho,
                                                     const HamiltonianSpec& h);

// Work released by the optimal permutation; equals the ergotropy of the
// dephased state. Cross-checked against exhaustive permutation search for
// d <= 5.
double incoherent_ergotropy(const DensityMatrix& rho, const HamiltonianSpec& h);

// Ergotropy of sigma_rho; equals total - incoherent.
double coherent_ergotropy(const DensityMatrix& rho, const HamiltonianSpec& h);

// Thermal state exp(-beta H)/Z. beta in us (inverse of rad/us).
DensityMatrix gibbs_state(const HamiltonianSpec& h, double beta);

// |beta*E_c(rho) - (C(rho) + D(P_dephased||rho_beta) - D(P_rho||rho_beta))|.
// Zero for every finite beta up to rounding.
double beta_identity_residual(const DensityMatrix& rho, const HamiltonianSpec& h,
                              double beta);

ErgotropyReport ergotropy_report(const DensityMatrix& rho,
                                 const HamiltonianSpec& h);

}  // namespace spinergo::ergo
