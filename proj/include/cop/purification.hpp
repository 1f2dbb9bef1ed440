/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cop/manifold_opt.hpp"
#include "cop/qcore.hpp"

namespace cop {

struct Purification {
  PureState state;         // factor_dims = {d_A, d_B}
  DensityOperator source;
  int ancilla_dim = 0;
};

// Built from the eigendecomposition: sum_k sqrt(lambda_k) |e_k>|k>, with
// eigenvalues below 1e-12 dropped. ancilla_dim defaults to rank(rho).
Purification canonical_purification(const DensityOperator& rho,
                                    std::optional<int> ancilla_dim = {});

struct CopResult {
  double value_fixed_basis = 0.0;  // bits
  double value_adapted = 0.0;      // bits
  UnitarySearchResult optimizer;
  int ancilla_dim = 0;
};

// The coherence-of-purification objective for rho: the dephased entropy of
// (I (x) U)|Psi_canonical> in the fixed product computational basis, as a
// function of the ancilla unitary U. Exposed so oracles and the CLI can
// evaluate the same objective the optimizer minimizes.
struct CopObjective {
  int ancilla_dim = 0;
  UnitaryObjective fn;
};
CopObjective make_cop_objective(const DensityOperator& rho,
                                std::optional<int> ancilla_dim = {});

// Minimizes the objective above over U(ancilla_dim); this is the artifact's
// canonical coherence of purification. Requires dim * ancilla_dim <= 64.
CopResult cop_fixed_basis(const DensityOperator& rho,
                          const OptimizerConfig& config,
                          std::optional<int> ancilla_dim = {});

// Closed form H(p_j) + sum_j p_j H(f^(j)) with f_i^(j) = |<i|psi_j>|^2,
// evaluated without minimization; defaults to the eigendecomposition.
double cop_adapted(const DensityOperator& rho);
double cop_adapted(const DensityOperator& rho,
                   const std::vector<std::pair<double, Vector>>& decomposition);

// Shannon entropy of the reference-basis diagonal (the coherence of
// purification of the dephased state).
double cop_of_dephased(const DensityOperator& rho);

// cop_fixed_basis(rho) - cop_of_dephased(rho), clamped at zero within -1e-6;
// more negative values signal an optimizer failure and raise.
double residual_quantumness(const DensityOperator& rho,
                            const OptimizerConfig& config);

// Sweeps ancilla dims in [rank, dim*rank] and returns the per-dim results
// plus the index of the minimum (evidence for the ancilla-size question).
std::vector<CopResult> cop_sweep_ancilla(const DensityOperator& rho,
                                         const OptimizerConfig& config);

}  // namespace cop
