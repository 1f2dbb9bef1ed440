/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "cop/coherence.hpp"
#include "cop/kernels.hpp"

namespace cop {

namespace {

int product(const std::vector<int>& v) {
  int p = 1;
  for (int d : v) p *= d;
  return p;
}

// flattened source index for each (row, col) of the cut-reshaped state
std::vector<long> cut_permutation(const std::vector<int>& dims,
                                  const std::vector<int>& ga,
                                  const std::vector<int>& gb) {
  const int nf = static_cast<int>(dims.size());
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  auto group_offsets = [&](const std::vector<int>& grp) {
    long count = 1;
    for (int f : grp) count *= dims[f];
    std::vector<long> out(count, 0);
    for (long x = 0; x < count; ++x) {
      long rem = x;
      for (int i = static_cast<int>(grp.size()) - 1; i >= 0; --i) {
        out[x] += (rem % dims[grp[i]]) * stride[grp[i]];
        rem /= dims[grp[i]];
      }
    }
    return out;
  };
  const auto ra = group_offsets(ga);
  const auto rb = group_offsets(gb);
  std::vector<long> perm(ra.size() * rb.size());
  for (std::size_t r = 0; r < ra.size(); ++r)
    for (std::size_t c = 0; c < rb.size(); ++c)
      perm[r * rb.size() + c] = ra[r] + rb[c];
  return perm;
}

double cut_entropy_from_amplitudes(const cplx* psi,
                                   const std::vector<long>& perm, long rows,
                                   long cols) {
  Matrix m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) m(r, c) = psi[perm[r * cols + c]];
  const Matrix gram = rows <= cols ? Matrix(m * m.adjoint())
                                   : Matrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return kernels::neg_xlog2x_sum(lam.data(),
                                 static_cast<std::size_t>(lam.size()));
}

void validate_cut(const std::vector<int>& dims, const BipartiteCut& cut) {
  const int nf = static_cast<int>(dims.size());
  std::vector<bool> seen(nf, false);
  auto mark = [&](const std::vector<int>& grp) {
    for (int f : grp) {
      if (f < 0 || f >= nf)
        throw validation_error("entanglement_entropy: cut index out of range");
      if (seen[f])
        throw validation_error("entanglement_entropy: cut groups overlap");
      seen[f] = true;
    }
  };
  mark(cut.group_a);
  mark(cut.group_b);
  if (cut.group_a.empty() || cut.group_b.empty() ||
      !std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw validation_error(
        "entanglement_entropy: cut must split all factors into two non-empty "
        "groups");
}

}  // namespace

double entanglement_entropy(const PureState& psi, const BipartiteCut& cut) {
  if (psi.factor_dims().empty())
    throw structural_error("entanglement_entropy: state has no factor_dims");
  const auto& dims = psi.factor_dims();
  validate_cut(dims, cut);
  long rows = 1, cols = 1;
  for (int f : cut.group_a) rows *= dims[f];
  for (int f : cut.group_b) cols *= dims[f];
  const auto perm = cut_permutation(dims, cut.group_a, cut.group_b);
  return cut_entropy_from_amplitudes(psi.vector().data(), perm, rows, cols);
}

double concurrence(const DensityOperator& rho) {
  if (rho.dim() != 4)
    throw validation_error("concurrence: requires a two-qubit state");
  if (rho.has_factors() && rho.factor_dims() != std::vector<int>{2, 2})
    throw validation_error("concurrence: factor_dims must be [2, 2]");

  Matrix yy = Matrix::Zero(4, 4);  // sigma_y (x) sigma_y
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix spin_flipped = yy * rho.matrix().conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> es(rho.matrix() * spin_flipped);
  std::array<double, 4> mu{};
  for (int i = 0; i < 4; ++i)
    mu[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double eof_two_qubit(const DensityOperator& rho) {
  const double c = concurrence(rho);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

EopResult entanglement_of_purification_result(
    const DensityOperator& rho_ab, const OptimizerConfig& config,
    std::optional<std::pair<int, int>> ancilla_split) {
  if (!rho_ab.has_factors() || rho_ab.factor_dims().size() != 2)
    throw structural_error(
        "entanglement_of_purification: state must carry two factor dims");
  const int da = rho_ab.factor_dims()[0];
  const int db = rho_ab.factor_dims()[1];
  const int r = rho_ab.rank();

  int sa, sb;
  if (ancilla_split) {
    sa = ancilla_split->first;
    sb = ancilla_split->second;
  } else {
    sa = sb = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(r))));
  }
  if (sa < 1 || sb < 1 || sa * sb < r)
    throw validation_error(
        "entanglement_of_purification: infeasible ancilla split " +
        std::to_string(sa) + "x" + std::to_string(sb) + " for rank " +
        std::to_string(r));
  const int m = sa * sb;

  const Purification purif = canonical_purification(rho_ab, m);
  auto psi = std::make_shared<Vector>(purif.state.vector());
  // factors [dA, dB, sA, sB]; cut AA' = {0,2}, BB' = {1,3}
  const auto perm =
      cut_permutation({da, db, sa, sb}, {0, 2}, {1, 3});
  const long rows = static_cast<long>(da) * sa;
  const long cols = static_cast<long>(db) * sb;
  const int sys = da * db;

  auto objective = [psi, m, sys, perm, rows, cols](const Matrix& u) {
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ur = u;
    Vector rotated(psi->size());
    kernels::apply_block_matrix(ur.data(), m, psi->data(), sys,
                                rotated.data());
    return cut_entropy_from_amplitudes(rotated.data(), perm, rows, cols);
  };

  EopResult result;
  result.ancilla_a = sa;
  result.ancilla_b = sb;
  result.optimizer = minimize_over_unitaries(m, objective, config);
  result.value = std::max(0.0, result.optimizer.best_value);
  return result;
}

double entanglement_of_purification(
    const DensityOperator& rho_ab, const OptimizerConfig& config,
    std::optional<std::pair<int, int>> ancilla_split) {
  return entanglement_of_purification_result(rho_ab, config, ancilla_split)
      .value;
}

CopResult cop_bipartite(const DensityOperator& rho_ab,
                        const OptimizerConfig& config) {
  return cop_fixed_basis(rho_ab, config);
}

CnotTransferReport check_prop7(const DensityOperator& rho_a,
                               const OptimizerConfig& config) {
  const CopResult cop = cop_fixed_basis(rho_a, config);
  const int d = rho_a.dim();
  const int r = cop.ancilla_dim;
  const int dc = d * r;

  // optimal purification for C_P
  const Purification purif = canonical_purification(rho_a, r);
  const Matrix u = exp_map(cop.optimizer.best_params);
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ur = u;
  Vector psi_opt(purif.state.vector().size());
  kernels::apply_block_matrix(ur.data(), r, purif.state.vector().data(), d,
                              psi_opt.data());

  // generalized CNOT against |0>_BB' copies the computational index
  Vector produced = Vector::Zero(static_cast<Eigen::Index>(dc) * dc);
  for (int x = 0; x < dc; ++x)
    produced[static_cast<Eigen::Index>(x) * dc + x] = psi_opt[x];
  const PureState joint(std::move(produced), {d, r, d, r});

  CnotTransferReport report;
  report.cop = cop.value_fixed_basis;
  report.cut_entropy = entanglement_entropy(joint, {{0, 1}, {2, 3}});
  report.equality_gap = std::abs(report.cut_entropy - report.cop);

  const DensityOperator rho_ab = partial_trace(joint.to_density(), {0, 2});
  report.eop_produced = entanglement_of_purification(rho_ab, config);
  report.upper_bound_holds = report.cop >= report.eop_produced - 1e-6;
  return report;
}

CopEopReport check_prop8(const DensityOperator& rho_ab,
                         const OptimizerConfig& config) {
  if (rho_ab.dim() > 16)
    throw validation_error("check_prop8: total dim capped at 16");
  if (!rho_ab.has_factors() || rho_ab.factor_dims().size() != 2)
    throw structural_error("check_prop8: state must carry two factor dims");
  const int da = rho_ab.factor_dims()[0];
  const int db = rho_ab.factor_dims()[1];

  CopEopReport report;
  report.cop = cop_bipartite(rho_ab, config).value_fixed_basis;

  const EopResult eop = entanglement_of_purification_result(rho_ab, config);
  report.eop = eop.value;
  report.gap = report.cop - report.eop;
  report.inequality_holds = report.gap >= -1e-6;

  // rotate the canonical purification by the E_P-optimal unitary and ask
  // whether its plain coherence already attains C_P
  const int m = eop.ancilla_a * eop.ancilla_b;
  const Purification purif = canonical_purification(rho_ab, m);
  const Matrix u = exp_map(eop.optimizer.best_params);
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ur = u;
  Vector rotated(purif.state.vector().size());
  kernels::apply_block_matrix(ur.data(), m, purif.state.vector().data(),
                              da * db, rotated.data());
  const PureState ep_opt(rotated, {da, db, eop.ancilla_a, eop.ancilla_b});
  const double cr_ep_opt = relative_entropy_coherence(ep_opt);
  report.coincidence_gap = cr_ep_opt - report.cop;
  report.optimizer_coincides = std::abs(report.coincidence_gap) <= 1e-5;

  // pure-state additivity diagnostic across the AA':BB' cut
  const DensityOperator rho_aa = partial_trace(ep_opt.to_density(), {0, 2});
  const DensityOperator rho_bb = partial_trace(ep_opt.to_density(), {1, 3});
  const double sum = relative_entropy_coherence(rho_aa).value +
                     relative_entropy_coherence(rho_bb).value +
                     von_neumann_entropy(rho_aa);
  report.additivity_gap = cr_ep_opt - sum;
  report.additivity_equality = std::abs(report.additivity_gap) <= 1e-6;
  return report;
}

}  // namespace cop
