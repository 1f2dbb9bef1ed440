/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include <cmath>
#include <limits>

#include "cop/kernels.hpp"
#include "cop/manifold_opt.hpp"

using namespace cop;

namespace {

// The rotated-branch weight x(U) = |sqrt(p) U00 + sqrt(1-p) U01|^2 of the
// mixed +/- qubit family, fed through the one-branch entropy formula
// Htilde(x) = -x log2(x/2) - (1-x) log2((1-x)/2) = 1 + h(x). Its minimum
// over U(2) is exactly 1 (x sweeps through 0).
UnitaryObjective family_branch_objective(double p) {
  return [p](const Matrix& u) {
    const double x =
        std::norm(std::sqrt(p) * u(0, 0) + std::sqrt(1.0 - p) * u(0, 1));
    return 1.0 + binary_entropy(std::clamp(x, 0.0, 1.0));
  };
}

// dephased-entropy objective of the canonical purification of a diagonal
// state (the coherence-of-purification inner loop, assembled by hand)
UnitaryObjective diagonal_cop_objective(const Eigen::VectorXd& lambda) {
  const int d = static_cast<int>(lambda.size());
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k)
    psi[static_cast<Eigen::Index>(k) * d + k] = std::sqrt(lambda[k]);
  return [psi, d](const Matrix& u) {
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ur = u;
    return kernels::rotated_dephased_entropy(ur.data(), d, psi.data(), d);
  };
}

}  // namespace

TEST_CASE("exp_map") {
  CHECK((exp_map(UnitaryParams::identity(3)) - Matrix::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  Prng rng(5);
  for (int d : {1, 2, 4}) {
    UnitaryParams p{d, Eigen::VectorXd(d * d)};
    for (int i = 0; i < d * d; ++i) p.params[i] = 2.0 * rng.gaussian();
    const Matrix u = exp_map(p);
    CHECK((u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <
          1e-9);
  }

  CHECK_THROWS_AS(exp_map(UnitaryParams{2, Eigen::VectorXd::Zero(3)}),
                  validation_error);
}

TEST_CASE("known minimizer: distance to the identity") {
  auto objective = [](const Matrix& u) {
    return (u - Matrix::Identity(u.rows(), u.cols())).squaredNorm();
  };
  OptimizerConfig cfg;
  cfg.seed = 3;
  const auto res = minimize_over_unitaries(2, objective, cfg);
  CHECK(res.best_value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.per_restart_values.size() == 16);
  CHECK(res.best_value ==
        *std::min_element(res.per_restart_values.begin(),
                          res.per_restart_values.end()));
}

TEST_CASE("qubit-family branch objective reaches 1") {
  OptimizerConfig cfg;
  cfg.seed = 7;
  const auto res = minimize_over_unitaries(2, family_branch_objective(0.3), cfg);
  CHECK(res.best_value == doctest::Approx(1.0).epsilon(1e-6));

  // identity restart guarantees no regression against the start point
  const double at_identity = family_branch_objective(0.3)(Matrix::Identity(2, 2));
  CHECK(res.best_value <= at_identity + 1e-12);
}

TEST_CASE("grid oracle") {
  auto constant = [](const Matrix&) { return 0.75; };
  CHECK(grid_oracle(2, constant, 10, 1) == doctest::Approx(0.75));

  // family branch objective: 1e5 Haar samples land within 1e-3 of 1
  const double oracle = grid_oracle(2, family_branch_objective(0.3), 100000, 11);
  CHECK(oracle == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(oracle >= 1.0 - 1e-12);
}

TEST_CASE("diagonal-state objective: optimizer matches the sampling oracle") {
  Eigen::VectorXd lambda(3);
  lambda << 0.5, 0.3, 0.2;
  const auto objective = diagonal_cop_objective(lambda);
  const double entropy = kernels::neg_xlog2x_sum(lambda.data(), 3);

  OptimizerConfig cfg;
  cfg.seed = 13;
  const auto res = minimize_over_unitaries(3, objective, cfg);
  // H(lambda) is the analytic minimum for diagonal states
  CHECK(res.best_value == doctest::Approx(entropy).epsilon(1e-9));

  const double oracle = grid_oracle(3, objective, 1000000, 17);
  CHECK(std::abs(oracle - entropy) <= 1e-4);
  CHECK(res.best_value <= oracle + 1e-6);
}

TEST_CASE("optimizer no worse than a 1e4-sample oracle on random spectra") {
  Prng rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXd lambda(2);
    const double a = 0.1 + 0.8 * rng.uniform();
    lambda << a, 1.0 - a;
    const auto objective = diagonal_cop_objective(lambda);
    OptimizerConfig cfg;
    cfg.seed = 100 + trial;
    const auto res = minimize_over_unitaries(2, objective, cfg);
    CHECK(res.best_value <= grid_oracle(2, objective, 10000, trial) + 1e-6);
  }
}

TEST_CASE("determinism given (seed, objective)") {
  OptimizerConfig cfg;
  cfg.seed = 99;
  const auto a = minimize_over_unitaries(2, family_branch_objective(0.4), cfg);
  const auto b = minimize_over_unitaries(2, family_branch_objective(0.4), cfg);
  CHECK(a.best_value == b.best_value);
  CHECK(a.per_restart_values == b.per_restart_values);
  CHECK((a.best_params.params - b.best_params.params).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("non-finite objectives abort the affected restart only") {
  // poisoned away from the identity: restart #1 survives
  auto partial = [](const Matrix& u) {
    const double d = (u - Matrix::Identity(2, 2)).squaredNorm();
    if (d > 2.0) return std::numeric_limits<double>::quiet_NaN();
    return d;
  };
  OptimizerConfig cfg;
  cfg.seed = 4;
  const auto res = minimize_over_unitaries(2, partial, cfg);
  CHECK(res.best_value == doctest::Approx(0.0).epsilon(1e-10));
  bool any_aborted = false;
  for (double v : res.per_restart_values)
    if (std::isinf(v)) any_aborted = true;
  CHECK(any_aborted);

  auto always_nan = [](const Matrix&) {
    return std::numeric_limits<double>::quiet_NaN();
  };
  CHECK_THROWS_AS(minimize_over_unitaries(2, always_nan, cfg),
                  validation_error);
}

TEST_CASE("config validation") {
  OptimizerConfig cfg;
  cfg.restarts = 0;
  CHECK_THROWS_AS(
      minimize_over_unitaries(2, [](const Matrix&) { return 0.0; }, cfg),
      validation_error);
}
