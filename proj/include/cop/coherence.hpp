/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <string>

#include "cop/manifold_opt.hpp"
#include "cop/qcore.hpp"

namespace cop {

struct CoherenceValue {
  double value = 0.0;  // bits, in [0, log2(dim)]
  std::string basis = "computational";
};

// S(Delta[rho]) - S(rho)
CoherenceValue relative_entropy_coherence(const DensityOperator& rho);
// fast path for pure states: Shannon entropy of |amplitudes|^2
double relative_entropy_coherence(const PureState& psi);

// Minimum average pure-state coherence over convex decompositions,
// searched over ancilla-basis rotations of the canonical purification with
// the ancilla capped at dim^2 elements. Supported for dim <= 8.
CoherenceValue coherence_of_formation(const DensityOperator& rho,
                                      const OptimizerConfig& config);

// Channel constructors (deterministic given seed).
KrausChannel make_gio_channel(int dim, int n_kraus, std::uint64_t seed);
KrausChannel make_incoherent_channel(int dim, int n_kraus, std::uint64_t seed);
KrausChannel make_dephasing_channel(int dim);
KrausChannel make_randomizing_channel(int dim);

// U|i>|j> = |i>|mod(i+j, d_target)>, requires d_target >= d_control.
Matrix generalized_cnot(int d_control, int d_target);

}  // namespace cop
