/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "cop/kernels.hpp"
#include "cop/purification.hpp"

namespace cop {

CoherenceValue relative_entropy_coherence(const DensityOperator& rho) {
  const Eigen::VectorXd diag = rho.matrix().diagonal().real().cwiseMax(0.0);
  const double dephased_entropy =
      kernels::neg_xlog2x_sum(diag.data(), static_cast<std::size_t>(diag.size()));
  return {std::max(0.0, dephased_entropy - von_neumann_entropy(rho))};
}

double relative_entropy_coherence(const PureState& psi) {
  Eigen::VectorXd g(psi.dim());
  kernels::abs_squared(psi.vector().data(), g.data(),
                       static_cast<std::size_t>(psi.dim()));
  return kernels::neg_xlog2x_sum(g.data(), static_cast<std::size_t>(g.size()));
}

CoherenceValue coherence_of_formation(const DensityOperator& rho,
                                      const OptimizerConfig& config) {
  const int d = rho.dim();
  if (d > 8)
    throw validation_error(
        "coherence_of_formation: unsupported above dim 8 (decomposition "
        "search cost)");

  if (rho.rank() == 1) {
    // unique decomposition: the state itself
    Vector v = rho.eigenvectors().col(rho.dim() - 1);
    return {relative_entropy_coherence(PureState(v))};
  }

  // Caratheodory-style cap: m = d^2 decomposition elements. Rotating the
  // ancilla of the canonical purification by U and reading it out in the
  // computational basis enumerates every decomposition with <= m elements.
  const int m = d * d;
  const Purification purif = canonical_purification(rho, m);
  const Vector& psi = purif.state.vector();

  // sum_j q_j H(f^(j)) = H(g) - H(q): joint dephased entropy minus the
  // ancilla marginal entropy. Restarts evaluate the objective concurrently,
  // so all scratch is per call.
  auto psi_shared = std::make_shared<Vector>(psi);
  auto objective = [psi_shared, d, m](const Matrix& u) {
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ur = u;
    std::vector<cplx> rotated(static_cast<std::size_t>(d) * m);
    kernels::apply_block_matrix(ur.data(), m, psi_shared->data(), d,
                                rotated.data());
    std::vector<double> g(rotated.size());
    kernels::abs_squared(rotated.data(), g.data(), rotated.size());
    std::vector<double> q(m, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < m; ++j) q[j] += g[i * m + j];
    return kernels::neg_xlog2x_sum(g.data(), g.size()) -
           kernels::neg_xlog2x_sum(q.data(), q.size());
  };

  const UnitarySearchResult res = minimize_over_unitaries(m, objective, config);
  return {std::max(0.0, res.best_value)};
}

KrausChannel make_gio_channel(int dim, int n_kraus, std::uint64_t seed) {
  if (n_kraus < 1) throw validation_error("make_gio_channel: n_kraus < 1");
  Prng rng(seed);
  // per column i, (lambda_i^(n))_n is a uniform unit vector on the complex
  // sphere, which makes sum_n K_n^dag K_n = I
  Matrix lambda(n_kraus, dim);
  for (int i = 0; i < dim; ++i) {
    double norm2 = 0.0;
    for (int n = 0; n < n_kraus; ++n) {
      lambda(n, i) = cplx(rng.gaussian(), rng.gaussian());
      norm2 += std::norm(lambda(n, i));
    }
    lambda.col(i) /= std::sqrt(norm2);
  }
  std::vector<Matrix> ops;
  for (int n = 0; n < n_kraus; ++n) {
    Matrix k = Matrix::Zero(dim, dim);
    k.diagonal() = lambda.row(n);
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops), ChannelClass::genuinely_incoherent);
}

KrausChannel make_incoherent_channel(int dim, int n_kraus,
                                     std::uint64_t seed) {
  if (n_kraus < 1)
    throw validation_error("make_incoherent_channel: n_kraus < 1");
  Prng rng(seed);
  // column i of K_n carries a single entry at row sigma_n(i); the
  // assignments must be injective per Kraus operator (colliding columns
  // would leave uncancelled off-diagonals in sum K^dag K), so each sigma_n
  // is a random permutation. Amplitudes across n form a unit vector per
  // column, which then gives completeness exactly.
  std::vector<std::vector<int>> sigma(n_kraus, std::vector<int>(dim));
  for (int n = 0; n < n_kraus; ++n) {
    std::iota(sigma[n].begin(), sigma[n].end(), 0);
    for (int i = dim - 1; i > 0; --i)
      std::swap(sigma[n][i],
                sigma[n][static_cast<int>(rng.next_u64() % (i + 1))]);
  }
  Matrix amp(n_kraus, dim);
  for (int i = 0; i < dim; ++i) {
    double norm2 = 0.0;
    for (int n = 0; n < n_kraus; ++n) {
      amp(n, i) = cplx(rng.gaussian(), rng.gaussian());
      norm2 += std::norm(amp(n, i));
    }
    amp.col(i) /= std::sqrt(norm2);
  }
  std::vector<Matrix> ops;
  for (int n = 0; n < n_kraus; ++n) {
    Matrix k = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) k(sigma[n][i], i) = amp(n, i);
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops), ChannelClass::incoherent);
}

KrausChannel make_dephasing_channel(int dim) {
  std::vector<Matrix> ops;
  for (int k = 0; k < dim; ++k) {
    Matrix p = Matrix::Zero(dim, dim);
    p(k, k) = 1.0;
    ops.push_back(std::move(p));
  }
  return KrausChannel(std::move(ops), ChannelClass::dephasing);
}

KrausChannel make_randomizing_channel(int dim) {
  // K_{ij} = |i><j| / sqrt(d): rho -> I/d for every rho
  std::vector<Matrix> ops;
  const double s = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Matrix k = Matrix::Zero(dim, dim);
      k(i, j) = s;
      ops.push_back(std::move(k));
    }
  return KrausChannel(std::move(ops), ChannelClass::randomizing);
}

Matrix generalized_cnot(int d_control, int d_target) {
  if (d_control < 1 || d_target < d_control)
    throw validation_error("generalized_cnot: requires d_target >= d_control");
  const int dim = d_control * d_target;
  Matrix u = Matrix::Zero(dim, dim);
  for (int i = 0; i < d_control; ++i)
    for (int j = 0; j < d_target; ++j)
      u(i * d_target + (i + j) % d_target, i * d_target + j) = 1.0;
  return u;
}

}  // namespace cop
