/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "cop/manifold_opt.hpp"
#include "cop/qcore.hpp"

namespace cop {

// Assisted discrimination of two non-orthogonal preparations with overlap
// alpha = <psi+|psi-> = conj(alpha_plus) * alpha_minus. The joint unitary is
// never materialized: the protocol is fully determined by the two branch
// images sqrt(1-|a±|^2)|±>|0> + a±|0>|1>.
struct AosdConfig {
  cplx alpha = 0.0;       // preparation overlap
  cplx alpha_plus = 0.0;  // flag amplitude of the + branch
  double p_plus = 0.5;
  double p_minus = 0.5;

  cplx alpha_minus() const;  // alpha / conj(alpha_plus); 0 when alpha == 0
  void validate() const;
};

// p_s = 1 - p+|a+|^2 - p-|a-|^2
double success_probability(const AosdConfig& cfg);

PureState branch_plus(const AosdConfig& cfg);
PureState branch_minus(const AosdConfig& cfg);

// p+ |B+><B+| + p- |B-><B-| on system (x) auxiliary, factor_dims {2, 2}
DensityOperator joint_state(const AosdConfig& cfg);

// partial trace of the joint state over the auxiliary qubit
DensityOperator reduced_system_state(const AosdConfig& cfg);
// printed 2x2 form, equal priors only
Matrix reduced_system_closed_form(const AosdConfig& cfg);

enum class SweepCondition {
  optimal,      // |a+| = sqrt(|alpha|)            (optimal p_s)
  constant_ps,  // |a+| = sqrt((1+sqrt(1-4|alpha|^2))/2), |alpha| <= 1/2
};

struct SweepRow {
  double alpha_abs = 0.0;
  double ps = 0.0;
  double concurrence = 0.0;
  double cop = 0.0;
  double cop_dephased = 0.0;
};

// One row per |alpha| grid point; cop is the full fixed-basis optimization
// on the reduced system state. random phases (seeded) confirm the
// phase-independence of p_s and the concurrence.
std::vector<SweepRow> aosd_sweep(const std::vector<double>& alpha_grid,
                                 SweepCondition condition,
                                 const OptimizerConfig& opt,
                                 double p_plus = 0.5,
                                 bool random_phases = false,
                                 std::uint64_t phase_seed = 0);

std::vector<double> alpha_grid(double start, double stop, int count);

}  // namespace cop
