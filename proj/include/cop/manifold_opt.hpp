/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cop/qcore.hpp"

namespace cop {

// d^2 real parameters of an anti-Hermitian generator A, realized as
// U = exp(A): the first d entries are the diagonal phases, then (re, im) per
// upper-triangular pair. Surjective onto U(d), smooth, no chart boundaries.
struct UnitaryParams {
  int dim = 0;
  Eigen::VectorXd params;  // size dim*dim

  static UnitaryParams identity(int dim) {
    return {dim, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim) * dim)};
  }
};

Matrix exp_map(const UnitaryParams& p);

struct OptimizerConfig {
  int restarts = 16;
  int max_iters = 2000;        // simplex iterations per restart
  double objective_tol = 1e-9;
  double step_tol = 1e-10;
  std::uint64_t seed = 0;
};

struct UnitarySearchResult {
  UnitaryParams best_params;
  double best_value = 0.0;
  std::vector<double> per_restart_values;  // aborted restarts record +inf
  bool converged = false;
};

using UnitaryObjective = std::function<double(const Matrix&)>;

// Multi-start derivative-free minimization over U(dim). Restart #1 always
// starts at the identity; ties between restarts break toward the lowest
// restart index. A restart whose objective returns a non-finite value is
// aborted and recorded, the others continue. Deterministic given
// (config.seed, objective); restarts may run in parallel.
UnitarySearchResult minimize_over_unitaries(int dim, const UnitaryObjective& f,
                                            const OptimizerConfig& config);

// Minimum of the objective over n_samples Haar-random unitaries plus the
// identity. Independent check for the optimizer, never the production path.
double grid_oracle(int dim, const UnitaryObjective& f, std::int64_t n_samples,
                   std::uint64_t seed);

}  // namespace cop
