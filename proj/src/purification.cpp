/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/purification.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "cop/kernels.hpp"

namespace cop {

Purification canonical_purification(const DensityOperator& rho,
                                    std::optional<int> ancilla_dim) {
  const int d = rho.dim();
  const int r = rho.rank();
  const int m = ancilla_dim.value_or(r);
  if (m < r)
    throw validation_error("canonical_purification: ancilla_dim " +
                           std::to_string(m) + " below rank " +
                           std::to_string(r));

  // eigenvalues are ascending; keep the top r
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * m);
  int slot = 0;
  for (int k = d - 1; k >= 0 && slot < r; --k) {
    const double lam = rho.eigenvalues()[k];
    if (lam < tol::rank_cutoff) continue;
    const double amp = std::sqrt(lam);
    for (int a = 0; a < d; ++a)
      psi[static_cast<Eigen::Index>(a) * m + slot] +=
          amp * rho.eigenvectors()(a, k);
    ++slot;
  }
  psi /= psi.norm();
  return {PureState(std::move(psi), {d, m}), rho, m};
}

CopObjective make_cop_objective(const DensityOperator& rho,
                                std::optional<int> ancilla_dim) {
  const Purification purif = canonical_purification(rho, ancilla_dim);
  const int d = rho.dim();
  const int m = purif.ancilla_dim;
  if (static_cast<std::size_t>(d) * m > 64)
    throw validation_error("coherence of purification: dim * ancilla_dim > 64");

  auto psi = std::make_shared<Vector>(purif.state.vector());
  auto objective = [psi, d, m](const Matrix& u) {
    // kernels expect the unitary row-major
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ur = u;
    return kernels::rotated_dephased_entropy(ur.data(), m, psi->data(), d);
  };
  return {m, std::move(objective)};
}

CopResult cop_fixed_basis(const DensityOperator& rho,
                          const OptimizerConfig& config,
                          std::optional<int> ancilla_dim) {
  CopObjective obj = make_cop_objective(rho, ancilla_dim);
  CopResult result;
  result.ancilla_dim = obj.ancilla_dim;
  result.value_adapted = cop_adapted(rho);
  result.optimizer = minimize_over_unitaries(obj.ancilla_dim, obj.fn, config);
  result.value_fixed_basis = result.optimizer.best_value;
  return result;
}

double cop_adapted(const DensityOperator& rho) {
  // g_ij = lambda_j |<i|e_j>|^2; H(g) = H(lambda) + sum_j lambda_j H(f^(j))
  const int d = rho.dim();
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    const double lam = rho.eigenvalues()[j];
    if (lam < tol::rank_cutoff) continue;
    for (int i = 0; i < d; ++i)
      g.push_back(lam * std::norm(rho.eigenvectors()(i, j)));
  }
  return kernels::neg_xlog2x_sum(g.data(), g.size());
}

double cop_adapted(const DensityOperator& rho,
                   const std::vector<std::pair<double, Vector>>& decomposition) {
  if (decomposition.empty())
    throw validation_error("cop_adapted: empty decomposition");
  Matrix mix = Matrix::Zero(rho.dim(), rho.dim());
  std::vector<double> g;
  for (const auto& [p, v] : decomposition) {
    if (p < 0) throw validation_error("cop_adapted: negative weight");
    if (v.size() != rho.dim())
      throw validation_error("cop_adapted: member dimension mismatch");
    const double n2 = v.squaredNorm();
    mix += (p / n2) * (v * v.adjoint());
    for (int i = 0; i < v.size(); ++i) g.push_back(p * std::norm(v[i]) / n2);
  }
  if ((mix - rho.matrix()).cwiseAbs().maxCoeff() > 1e-8)
    throw validation_error("cop_adapted: decomposition does not mix to rho");
  return kernels::neg_xlog2x_sum(g.data(), g.size());
}

double cop_of_dephased(const DensityOperator& rho) {
  const Eigen::VectorXd diag = rho.matrix().diagonal().real().cwiseMax(0.0);
  return kernels::neg_xlog2x_sum(diag.data(),
                                 static_cast<std::size_t>(diag.size()));
}

double residual_quantumness(const DensityOperator& rho,
                            const OptimizerConfig& config) {
  const double value =
      cop_fixed_basis(rho, config).value_fixed_basis - cop_of_dephased(rho);
  if (value < -1e-6)
    throw validation_error(
        "residual_quantumness: negative by " + std::to_string(-value) +
        " — optimizer failure (dephasing monotonicity violated)");
  return std::max(0.0, value);
}

std::vector<CopResult> cop_sweep_ancilla(const DensityOperator& rho,
                                         const OptimizerConfig& config) {
  const int r = rho.rank();
  const int hi = std::min(rho.dim() * r, 64 / rho.dim());
  std::vector<CopResult> results;
  for (int m = r; m <= std::max(r, hi); ++m)
    results.push_back(cop_fixed_basis(rho, config, m));
  return results;
}

}  // namespace cop
