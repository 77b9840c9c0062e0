#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spinergo/parallel.hpp"
#include "spinergo/qmath.hpp"

namespace spinergo::nvsim {

using qmath::Complex;
using qmath::DensityMatrix;
using qmath::HamiltonianSpec;
using qmath::Matrix;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Ground-state constants, stored as angular frequencies in rad/us (the
// explicit 2*pi of the lab-frame Hamiltonian is applied at construction).
struct NVParams {
  double d_zfs = kTwoPi * 2870.0;   // zero-field splitting, 2.87 GHz
  double q_quad = kTwoPi * -4.95;   // nuclear quadrupole
  double a_hf = kTwoPi * -2.16;     // hyperfine coupling
  double omega_e = 0.0;             // electron Zeeman
  double omega_n = 0.0;             // nuclear Zeeman

  // Zeeman terms from standard gyromagnetic ratios:
  // gamma_e = 2.8025 MHz/G, gamma_n(14N) = 0.3077 kHz/G.
  static NVParams at_field_gauss(double b_gauss) {
    NVParams p;
    p.omega_e = kTwoPi * 2.8025 * b_gauss;
    p.omega_n = kTwoPi * 3.077e-4 * b_gauss;
    return p;
  }
};

struct NoiseParams {
  double t1_us = 8200.0;       // spin-lattice relaxation
  double t2_star_us = 56.0;    // Ramsey (Gaussian) dephasing
  double t2_echo_us = 900.0;   // spin echo
  double t2_rabi_us = 600.0;   // nutation decay
  double p_e = 0.97;           // electron polarization
  double p_n = 0.99;           // nuclear polarization
  int dephasing_exponent = 2;  // Ramsey envelope exp(-(t/T2*)^p), p in {1,2}
  // Nominal Rabi frequency used to convert t2_rabi into a relative amplitude
  // spread (not reported for the nutation experiment).
  double nominal_rabi_rad_us = kTwoPi * 10.0;

  void validate() const;
  double detuning_sigma() const;   // sqrt(2)/T2*, rad/us
  double amplitude_sigma() const;  // sqrt(2)/(nominal_rabi * t2_rabi)
};

// Piecewise-constant two-tone control schedule. Tone 1 addresses the electron
// transition in the |1>n manifold (joint block 0), tone 2 the |0>n manifold
// (block 1).
struct PulseSegment {
  double duration_us = 0.0;
  double amp1 = 0.0;    // rad/us
  double phase1 = 0.0;  // rad
  double amp2 = 0.0;
  double phase2 = 0.0;
};

struct PulseSequence {
  std::vector<PulseSegment> segments;

  double total_time() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration_us;
    return t;
  }
  // User-facing validation: durations > 0, amplitudes >= 0, phases in [0,2pi).
  void validate() const;
};

struct PropagationModel {
  // Detuning-aware cross-talk: each tone also drives the other hyperfine
  // manifold, with its phase rotating at the +-2*pi*A splitting. When false,
  // both manifolds are driven identically (the literal two-tone control
  // Hamiltonian).
  bool cross_talk = true;
  double hyperfine_rad_us = kTwoPi * -2.16;  // omega(1n block) - omega(0n block)
  double max_phase_step_rad = 0.05;          // substep resolution for beats
};

// 4-level Hamiltonian in NV level order {1n1e, 1n0e, 0n1e, 0n0e}, rad/us.
Matrix subspace_hamiltonian(const NVParams& p);

// Interaction picture that cancels a diagonal lab Hamiltonian except for H_S
// conditioned on the ancilla: returns |1><1|_A (x) H_S (ancilla-major, same
// intra-block ordering as h_lab). Requires both Hamiltonians diagonal.
Matrix rotating_frame(const Matrix& h_lab, const HamiltonianSpec& h_s);

// One static substep of a block propagator: H = (detuning/2) sigma_z +
// sum_k (amp_k/2)(cos(phase_k) sigma_x + sin(phase_k) sigma_y) in {e,g}.
struct Substep {
  double dt = 0.0;
  double detuning = 0.0;
  std::array<double, 2> amp{};    // per tone
  std::array<double, 2> phase{};  // effective phase at the substep midpoint
  int segment = 0;
};

// Expands the pulse into per-block substep lists. In cross-talk mode the
// cross tone's phase advances at the hyperfine beat within each segment;
// otherwise one substep per segment suffices and both blocks coincide up to
// their detunings.
std::array<std::vector<Substep>, 2> substep_plan(const PulseSequence& seq,
                                                 double detuning_1,
                                                 double detuning_2,
                                                 const PropagationModel& model);

Eigen::Matrix2cd substep_hamiltonian(const Substep& s);

// Time-ordered 4x4 propagator (canonical ancilla-major joint order), exactly
// unitary: a product of closed-form 2x2 exponentials per block.
Matrix propagate_pulse(const PulseSequence& seq, double detuning_1,
                       double detuning_2,
                       const PropagationModel& model = PropagationModel{});

// Off-diagonal damping factor applied to every coherence (all basis pairs).
DensityMatrix scale_offdiagonals(const DensityMatrix& rho, double factor);
// Damping restricted to coherences between different electron states of a
// 4-level joint state in canonical order (nuclear coherences keep phase).
DensityMatrix scale_electron_offdiagonals(const DensityMatrix& joint,
                                          double factor);

// Ramsey dephasing: off-diagonals times exp(-(t/T2*)^p), diagonals untouched.
DensityMatrix dephasing_channel(const DensityMatrix& rho, double t_us,
                                double t2_star_us, int exponent = 2);

// T1 mixing toward a diagonal stationary state; coherences decay with
// exp(-t/(2 T1)).
DensityMatrix relaxation_channel(const DensityMatrix& rho, double t_us,
                                 double t1_us, const DensityMatrix& stationary);

struct MonteCarloResult {
  double mean_fidelity = 0.0;
  double std_dev = 0.0;
};

// Average gate fidelity under quasi-static Gaussian detuning and relative
// amplitude error, resampled per shot. Deterministic for fixed (seed,
// samples) independent of thread count: per-shot streams, pre-allocated
// accumulation, serial reduction.
MonteCarloResult gate_fidelity_monte_carlo(
    const PulseSequence& seq, const Matrix& target, const NoiseParams& noise,
    int samples, std::uint64_t seed,
    const PropagationModel& model = PropagationModel{},
    par::Mode mode = par::Mode::openmp);

namespace detail {
// |Tr[target^dag u] / Tr[u^dag u]|^2; shared with the pulse optimizer.
double unitary_overlap_fidelity(const Matrix& u, const Matrix& target);
}  // namespace detail

}  // namespace spinergo::nvsim
