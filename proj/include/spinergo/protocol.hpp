#pragma once

#include <optional>

#include "spinergo/qmath.hpp"

namespace spinergo::protocol {

using qmath::Complex;
using qmath::DensityMatrix;
using qmath::HamiltonianSpec;
using qmath::Matrix;

// Ancilla-assisted mean-energy measurement. The ancilla is the leading tensor
// factor; the conditional evolution applies U_S = exp(-i H tau) when the
// ancilla is |1>, identity when it is |0> (the mirrored labeling differs only
// by conjugating the extracted phase).
struct EnergyMeasurementConfig {
  double tau = 0.5;  // us; must satisfy span(H)*tau < pi
  bool normalize = true;
  // Defaults to the projector onto the highest-energy eigenstate of H.
  std::optional<DensityMatrix> reference_state;
};

// |+><+| (x) rho, dimension 2d, ancilla-major.
DensityMatrix build_joint_state(const DensityMatrix& rho);

// Applies U_C = |0><0| (x) I + |1><1| (x) exp(-i H tau).
DensityMatrix conditional_evolve(const DensityMatrix& joint,
                                 const HamiltonianSpec& h, double tau);

// Tr[rho U_S^dag], reconstructed as twice the reduced-ancilla off-diagonal.
Complex ancilla_offdiagonal(const DensityMatrix& joint);

struct EnergyEstimate {
  double raw = 0.0;         // Im Tr[rho U_S^dag] / tau, rad/us
  double normalized = 0.0;  // exact excited population for a diagonal qubit H
};

EnergyEstimate estimate_mean_energy(const DensityMatrix& rho,
                                    const HamiltonianSpec& h,
                                    const EnergyMeasurementConfig& cfg = {});

// The imaginary signal Im Tr[rho U_S^dag] alone; the raw readout quantity the
// photoluminescence chain reconstructs.
double imaginary_signal(const DensityMatrix& rho, const HamiltonianSpec& h,
                        double tau);

}  // namespace spinergo::protocol
