/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/aosd.hpp"

#include <cmath>

#include "cop/entanglement.hpp"
#include "cop/parallel.hpp"
#include "cop/prng.hpp"
#include "cop/purification.hpp"

namespace cop {

cplx AosdConfig::alpha_minus() const {
  if (std::abs(alpha) == 0.0) return 0.0;
  return alpha / std::conj(alpha_plus);
}

void AosdConfig::validate() const {
  if (std::abs(alpha) > 1.0 + 1e-12)
    throw validation_error("aosd: |alpha| must be <= 1");
  if (std::abs(alpha_plus) > 1.0 + 1e-12)
    throw validation_error("aosd: |alpha_plus| must be <= 1");
  if (std::abs(alpha) > 0.0 && std::abs(alpha_plus) == 0.0)
    throw validation_error("aosd: alpha_plus == 0 requires alpha == 0");
  if (std::abs(alpha_minus()) > 1.0 + 1e-9)
    throw validation_error("aosd: derived |alpha_minus| exceeds 1");
  if (std::abs(p_plus + p_minus - 1.0) > 1e-12)
    throw validation_error("aosd: priors must sum to 1");
  if (p_plus < 0.0 || p_minus < 0.0)
    throw validation_error("aosd: priors must be nonnegative");
}

double success_probability(const AosdConfig& cfg) {
  cfg.validate();
  return 1.0 - cfg.p_plus * std::norm(cfg.alpha_plus) -
         cfg.p_minus * std::norm(cfg.alpha_minus());
}

namespace {

// sqrt(1-|a|^2)|s>|0> + a|0>|1> with |s> = (|0> +- |1>)/sqrt(2)
PureState branch(cplx a, int sign) {
  const double w = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
  const double inv = 1.0 / std::sqrt(2.0);
  Vector v(4);
  v[0] = w * inv;         // |00>
  v[1] = a;               // |01>
  v[2] = sign * w * inv;  // |10>
  v[3] = 0.0;             // |11>
  v /= v.norm();
  return PureState(std::move(v), {2, 2});
}

}  // namespace

PureState branch_plus(const AosdConfig& cfg) {
  cfg.validate();
  return branch(cfg.alpha_plus, +1);
}

PureState branch_minus(const AosdConfig& cfg) {
  cfg.validate();
  return branch(cfg.alpha_minus(), -1);
}

DensityOperator joint_state(const AosdConfig& cfg) {
  cfg.validate();
  const Vector bp = branch_plus(cfg).vector();
  const Vector bm = branch_minus(cfg).vector();
  Matrix m = cfg.p_plus * (bp * bp.adjoint()) + cfg.p_minus * (bm * bm.adjoint());
  return DensityOperator(std::move(m), {2, 2});
}

DensityOperator reduced_system_state(const AosdConfig& cfg) {
  return partial_trace(joint_state(cfg), {0});
}

Matrix reduced_system_closed_form(const AosdConfig& cfg) {
  cfg.validate();
  if (std::abs(cfg.p_plus - 0.5) > 1e-12)
    throw validation_error(
        "reduced_system_closed_form: printed form requires equal priors");
  const double ps = success_probability(cfg);
  const double ap2 = std::norm(cfg.alpha_plus);
  const double off =
      ap2 > 0.0 ? 0.25 * (std::norm(cfg.alpha) / ap2 - ap2) : 0.0;
  Matrix m(2, 2);
  m(0, 0) = 1.0 - 0.5 * ps;
  m(1, 1) = 0.5 * ps;
  m(0, 1) = off;
  m(1, 0) = off;
  return m;
}

std::vector<double> alpha_grid(double start, double stop, int count) {
  if (count < 1) throw validation_error("alpha grid: count must be >= 1");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = start;
    return grid;
  }
  for (int i = 0; i < count; ++i)
    grid[i] = start + (stop - start) * i / (count - 1);
  return grid;
}

std::vector<SweepRow> aosd_sweep(const std::vector<double>& alpha_grid,
                                 SweepCondition condition,
                                 const OptimizerConfig& opt, double p_plus,
                                 bool random_phases, std::uint64_t phase_seed) {
  std::vector<SweepRow> rows(alpha_grid.size());
  const Prng root(phase_seed);
  parallel_for(alpha_grid.size(), [&](std::size_t i) {
    const double a = alpha_grid[i];
    if (a < 0.0 || a > 1.0)
      throw validation_error("aosd_sweep: |alpha| outside [0, 1]");

    double ap_mag;
    switch (condition) {
      case SweepCondition::optimal:
        ap_mag = std::sqrt(a);
        break;
      case SweepCondition::constant_ps: {
        if (a > 0.5 + 1e-12)
          throw validation_error(
              "aosd_sweep: constant-p_s condition needs |alpha| <= 1/2");
        const double root_term = std::sqrt(std::max(0.0, 1.0 - 4.0 * a * a));
        ap_mag = std::sqrt(0.5 * (1.0 + root_term));
        break;
      }
    }

    AosdConfig cfg;
    cfg.p_plus = p_plus;
    cfg.p_minus = 1.0 - p_plus;
    cfg.alpha = a;
    if (random_phases) {
      // flag phase: rotates both branch flags together, a local gauge that
      // leaves p_s and the concurrence untouched. The relative branch phase
      // arg(alpha) is physical and is kept at zero by the sweep.
      Prng rng = root.split(i);
      const double two_pi = 6.283185307179586476925286766559;
      cfg.alpha_plus = std::polar(ap_mag, two_pi * rng.uniform());
    } else {
      cfg.alpha_plus = ap_mag;
    }

    SweepRow row;
    row.alpha_abs = a;
    row.ps = success_probability(cfg);
    row.concurrence = concurrence(joint_state(cfg));
    const DensityOperator rho_s = reduced_system_state(cfg);
    row.cop = cop_fixed_basis(rho_s, opt).value_fixed_basis;
    row.cop_dephased = cop_of_dephased(rho_s);
    rows[i] = row;
  });
  return rows;
}

}  // namespace cop
