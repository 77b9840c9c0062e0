#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "spinergo/qmath.hpp"

namespace spinergo::readout {

using qmath::DensityMatrix;
using qmath::Matrix;

// Photoluminescence rates of the four levels, ordered
// (|1>n|1>e, |1>n|0>e, |0>n|1>e, |0>n|0>e). Arbitrary normalized units; the
// |0>e levels are the bright ones.
struct PLCalibration {
  double l11 = 0.0;
  double l10 = 0.0;
  double l01 = 0.0;
  double l00 = 0.0;

  // Electron-only contrast (m_s=0 -> 1.0, m_s=+-1 -> 0.7). Sufficient for the
  // five calibration sequences but leaves the off-diagonal inversion
  // degenerate (l10 == l00).
  static PLCalibration electron_contrast() { return {0.7, 1.0, 0.7, 1.0}; }
  // Adds a nuclear readout contrast so both off-diagonal denominators are
  // usable, with |l10 - l01| well above |l11 - l01|.
  static PLCalibration defaults() { return {0.70, 1.00, 0.73, 0.90}; }

  void validate() const;
  std::array<double, 4> as_array() const { return {l11, l10, l01, l00}; }
};

// The five calibration-sequence intensities for electron polarization p_e.
std::array<double, 5> forward_calibration_intensities(const PLCalibration& cal,
                                                      double p_e);

struct CalibrationFit {
  PLCalibration rates;
  double residual = 0.0;          // L2 norm of the least-squares residual
  double condition_number = 0.0;  // of the 5x4 coefficient matrix
};

// Least-squares solve of the five-equation system for the four rates.
// Throws IllConditioned near p_e = 0.5 where two row pairs coincide.
CalibrationFit calibrate_pl_rates(const std::array<double, 5>& intensities,
                                  double p_e);

// The four off-diagonal-sequence intensities for a 4-level joint state given
// in NV level order.
std::array<double, 4> forward_offdiagonal_intensities(const Matrix& rho_nv,
                                                      const PLCalibration& cal);

struct OffDiagonals {
  double im_rho24 = 0.0;  // Im<1n 0e|rho|0n 0e>
  double im_rho13 = 0.0;  // Im<1n 1e|rho|0n 1e>
};

// Closed-form inversion of the off-diagonal sequences. Throws
// DegenerateContrast when a PL-rate denominator vanishes.
OffDiagonals extract_offdiagonals(const std::array<double, 4>& intensities,
                                  const PLCalibration& cal);

// Poisson shot noise: each intensity is replaced by a Poisson draw with mean
// intensity*counts, rescaled back. Deterministic for a given generator state.
template <std::size_t N>
std::array<double, N> add_shot_noise(const std::array<double, N>& intensities,
                                     double counts, std::mt19937_64& gen) {
  std::array<double, N> out{};
  for (std::size_t k = 0; k < N; ++k) {
    const double mean = intensities[k] * counts;
    if (mean <= 0.0) {
      out[k] = 0.0;
      continue;
    }
    std::poisson_distribution<long long> poisson(mean);
    out[k] = double(poisson(gen)) / counts;
  }
  return out;
}

}  // namespace spinergo::readout
