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
#include "cop/purification.hpp"
#include "cop/qcore.hpp"

namespace cop {

// Partition of the tensor factors into two disjoint groups covering all
// factors, e.g. AA':BB'.
struct BipartiteCut {
  std::vector<int> group_a;
  std::vector<int> group_b;
};

// S(Tr_groupB |psi><psi|) in ebits; symmetric across the cut.
double entanglement_entropy(const PureState& psi, const BipartiteCut& cut);

// Wootters concurrence for a two-qubit state (factor_dims {2,2}).
double concurrence(const DensityOperator& rho);
// E_F = h((1 + sqrt(1 - C^2))/2)
double eof_two_qubit(const DensityOperator& rho);

struct EopResult {
  double value = 0.0;  // ebits
  UnitarySearchResult optimizer;
  int ancilla_a = 0;
  int ancilla_b = 0;
};

// min over ancilla unitaries of the entanglement entropy of
// (I (x) U)|Psi_canonical> across the AA':BB' cut. The split defaults to the
// smallest balanced (s, s) with s*s >= rank(rho_ab).
EopResult entanglement_of_purification_result(
    const DensityOperator& rho_ab, const OptimizerConfig& config,
    std::optional<std::pair<int, int>> ancilla_split = {});
double entanglement_of_purification(
    const DensityOperator& rho_ab, const OptimizerConfig& config,
    std::optional<std::pair<int, int>> ancilla_split = {});

// Coherence of purification of the joint state, treated as a single system.
CopResult cop_bipartite(const DensityOperator& rho_ab,
                        const OptimizerConfig& config);

// Builds the optimal purification |Psi>_AA' for C_P(rho_a), copies its
// computational index onto an incoherent ancilla with the generalized CNOT,
// and compares the AA':BB' cut entanglement with C_P and with E_P of the
// produced two-party state.
struct CnotTransferReport {
  double cop = 0.0;           // C_P(rho_a)
  double cut_entropy = 0.0;   // entanglement across AA':BB' after the CNOT
  double eop_produced = 0.0;  // E_P of the reduced AB state it produces
  double equality_gap = 0.0;  // |cut_entropy - cop|
  bool upper_bound_holds = false;  // cop >= eop_produced - 1e-6
};
CnotTransferReport check_prop7(const DensityOperator& rho_a,
                               const OptimizerConfig& config);

// C_P(rho_ab) vs E_P(rho_ab) plus the (report-only) optimizer-coincidence
// and pure-state additivity diagnostics. Requires total dim <= 16.
struct CopEopReport {
  double cop = 0.0;
  double eop = 0.0;
  double gap = 0.0;                 // cop - eop
  bool inequality_holds = false;    // gap >= -1e-6
  bool optimizer_coincides = false; // E_P-optimal purification reaches C_P
  double coincidence_gap = 0.0;     // C_R(EP-optimal) - cop
  bool additivity_equality = false; // C_R(Psi) = C_R(AA') + C_R(BB') + S(AA')
  double additivity_gap = 0.0;
};
CopEopReport check_prop8(const DensityOperator& rho_ab,
                         const OptimizerConfig& config);

}  // namespace cop
