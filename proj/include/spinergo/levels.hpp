#pragma once

#include <array>

#include "spinergo/qmath.hpp"

// Basis conventions for the 4-level (nuclear x electron) subspace.
//
// The toolkit's canonical joint ordering is ancilla-major, matching the
// protocol module:
//
//   index 0 : |0>_A |e>   ( = |1>_n |0>_e, the polarized level )
//   index 1 : |0>_A |g>   ( = |1>_n |1>_e )
//   index 2 : |1>_A |e>   ( = |0>_n |0>_e )
//   index 3 : |1>_A |g>   ( = |0>_n |1>_e )
//
// The ancilla |0>_A is the polarized nuclear state |1>_n; the electron |0>_e
// maps to the high-energy model level |e>. Photoluminescence bookkeeping uses
// the NV level order {|1>n|1>e, |1>n|0>e, |0>n|1>e, |0>n|0>e} instead, which
// is the permutation {1, 0, 3, 2} of the canonical order.

namespace spinergo::levels {

inline constexpr std::array<Eigen::Index, 4> kNvFromJoint = {1, 0, 3, 2};

inline qmath::Matrix permute(const qmath::Matrix& m,
                             const std::array<Eigen::Index, 4>& p) {
  qmath::Matrix out(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      out(i, j) = m(p[static_cast<std::size_t>(i)],
                    p[static_cast<std::size_t>(j)]);
  return out;
}

// Canonical ancilla-major joint state -> NV level order.
inline qmath::Matrix to_nv_order(const qmath::Matrix& joint) {
  return permute(joint, kNvFromJoint);
}

// NV level order -> canonical ancilla-major order (the permutation is an
// involution).
inline qmath::Matrix from_nv_order(const qmath::Matrix& nv) {
  return permute(nv, kNvFromJoint);
}

// Electron index (0 = |e>, 1 = |g>) of a canonical joint basis index.
inline Eigen::Index electron_index(Eigen::Index joint_index) {
  return joint_index % 2;
}

}  // namespace spinergo::levels
