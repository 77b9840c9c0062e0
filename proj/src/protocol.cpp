#include "spinergo/protocol.hpp"

#include <cmath>

#include "spinergo/ergo.hpp"

namespace spinergo::protocol {

namespace {

Matrix evolution_operator(const HamiltonianSpec& h, double tau) {
  return qmath::matrix_exp(h.matrix(), -qmath::kImag * tau);
}

}  // namespace

DensityMatrix build_joint_state(const DensityMatrix& rho) {
  if (rho.dim() < 2) throw DimensionMismatch("system dimension must be >= 2");
  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  return DensityMatrix(qmath::tensor_product(plus, rho.mat()));
}

DensityMatrix conditional_evolve(const DensityMatrix& joint,
                                 const HamiltonianSpec& h, double tau) {
  const Eigen::Index d = h.dim();
  if (joint.dim() != 2 * d)
    throw DimensionMismatch("joint state is not ancilla (x) system");
  const Matrix us = evolution_operator(h, tau);
  Matrix uc = Matrix::Identity(2 * d, 2 * d);
  uc.block(d, d, d, d) = us;
  return DensityMatrix(uc * joint.mat() * uc.adjoint());
}

Complex ancilla_offdiagonal(const DensityMatrix& joint) {
  if (joint.dim() % 2 != 0)
    throw DimensionMismatch("joint state dimension must be even");
  const Eigen::Index d = joint.dim() / 2;
  const auto anc = qmath::partial_trace(joint, {2, d}, 0);
  return 2.0 * anc(0, 1);
}

double imaginary_signal(const DensityMatrix& rho, const HamiltonianSpec& h,
                        double tau) {
  const auto evolved = conditional_evolve(build_joint_state(rho), h, tau);
  return ancilla_offdiagonal(evolved).imag();
}

EnergyEstimate estimate_mean_energy(const DensityMatrix& rho,
                                    const HamiltonianSpec& h,
                                    const EnergyMeasurementConfig& cfg) {
  if (!(cfg.tau > 0.0)) throw DomainError("tau must be > 0");
  if (h.span() * cfg.tau >= M_PI)
    throw DomainError("span(H)*tau must stay below pi (monotonicity window)");

  EnergyEstimate est;
  const double signal = imaginary_signal(rho, h, cfg.tau);
  est.raw = signal / cfg.tau;
  if (!cfg.normalize) return est;

  DensityMatrix ref = cfg.reference_state.value_or(DensityMatrix(
      h.eigenvectors().col(h.dim() - 1) *
      h.eigenvectors().col(h.dim() - 1).adjoint()));
  const double ref_signal = imaginary_signal(ref, h, cfg.tau);
  if (std::abs(ref_signal) < 1e-9)
    throw DegenerateReference("reference state yields no measurable signal");
  // The reference measurement carries the same sinc suppression, so the ratio
  // is bias-free; rescale by the reference's exact normalized energy.
  const double ref_norm_energy =
      (ergo::mean_energy(ref, h) - h.energies()(0)) / h.span();
  est.normalized = signal / ref_signal * ref_norm_energy;
  return est;
}

}  // namespace spinergo::protocol
