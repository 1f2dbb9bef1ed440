/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cop/kernels.hpp"

namespace cop {

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

void check_factor_dims(int dim, const std::vector<int>& factor_dims,
                       const char* what) {
  if (factor_dims.empty()) return;
  for (int d : factor_dims)
    if (d < 1) throw validation_error(std::string(what) + ": factor dim < 1");
  if (product(factor_dims) != dim)
    throw validation_error(std::string(what) +
                           ": factor_dims product does not match dim");
}

std::vector<int> default_factors(const std::vector<int>& factors, int dim) {
  return factors.empty() ? std::vector<int>{dim} : factors;
}

}  // namespace

DensityOperator::DensityOperator(Matrix m, std::vector<int> factor_dims,
                                 std::optional<std::uint64_t> sample_seed)
    : factor_dims_(std::move(factor_dims)), sample_seed_(sample_seed) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw validation_error("DensityOperator: matrix must be square");
  check_factor_dims(static_cast<int>(m.rows()), factor_dims_,
                    "DensityOperator");

  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol::hermiticity)
    throw validation_error("DensityOperator: not Hermitian (max deviation " +
                           std::to_string(herm_dev) + ")");
  matrix_ = 0.5 * (m + m.adjoint().eval());

  const double tr_dev = std::abs(matrix_.trace() - cplx(1.0, 0.0));
  if (tr_dev > tol::trace_one)
    throw validation_error("DensityOperator: trace deviates from 1 by " +
                           std::to_string(tr_dev));

  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_);
  if (es.info() != Eigen::Success)
    throw validation_error("DensityOperator: eigendecomposition failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  if (eigenvalues_.minCoeff() < -tol::psd)
    throw validation_error("DensityOperator: negative eigenvalue " +
                           std::to_string(eigenvalues_.minCoeff()));
  eigenvalues_ = eigenvalues_.cwiseMax(0.0);
}

int DensityOperator::rank(double cutoff) const {
  int r = 0;
  for (int i = 0; i < eigenvalues_.size(); ++i)
    if (eigenvalues_[i] >= cutoff) ++r;
  return r;
}

PureState::PureState(Vector v, std::vector<int> factor_dims,
                     std::optional<std::uint64_t> sample_seed)
    : vector_(std::move(v)),
      factor_dims_(std::move(factor_dims)),
      sample_seed_(sample_seed) {
  if (vector_.size() < 1) throw validation_error("PureState: empty vector");
  check_factor_dims(dim(), factor_dims_, "PureState");
  const double norm_dev = std::abs(vector_.norm() - 1.0);
  if (norm_dev > tol::unit_norm)
    throw validation_error("PureState: norm deviates from 1 by " +
                           std::to_string(norm_dev));
}

DensityOperator PureState::to_density() const {
  return DensityOperator(vector_ * vector_.adjoint(), factor_dims_,
                         sample_seed_);
}

std::string to_string(ChannelClass c) {
  switch (c) {
    case ChannelClass::general: return "general";
    case ChannelClass::incoherent: return "incoherent";
    case ChannelClass::genuinely_incoherent: return "genuinely_incoherent";
    case ChannelClass::dephasing: return "dephasing";
    case ChannelClass::randomizing: return "randomizing";
  }
  return "general";
}

ChannelClass channel_class_from_string(const std::string& s) {
  if (s == "general") return ChannelClass::general;
  if (s == "incoherent") return ChannelClass::incoherent;
  if (s == "genuinely_incoherent" || s == "gio")
    return ChannelClass::genuinely_incoherent;
  if (s == "dephasing") return ChannelClass::dephasing;
  if (s == "randomizing") return ChannelClass::randomizing;
  throw validation_error("unknown channel class: " + s);
}

KrausChannel::KrausChannel(std::vector<Matrix> operators, ChannelClass tag)
    : operators_(std::move(operators)), class_tag_(tag) {
  if (operators_.empty())
    throw validation_error("KrausChannel: no Kraus operators");
  const auto rows = operators_[0].rows();
  const auto cols = operators_[0].cols();
  for (const auto& k : operators_)
    if (k.rows() != rows || k.cols() != cols)
      throw validation_error("KrausChannel: inconsistent operator shapes");

  Matrix sum = Matrix::Zero(cols, cols);
  for (const auto& k : operators_) sum += k.adjoint() * k;
  const double dev =
      (sum - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (dev > tol::completeness)
    throw validation_error("KrausChannel: completeness violated by " +
                           std::to_string(dev));

  if (class_tag_ == ChannelClass::incoherent) {
    for (const auto& k : operators_) {
      for (Eigen::Index c = 0; c < k.cols(); ++c) {
        int nonzero = 0;
        for (Eigen::Index r = 0; r < k.rows(); ++r)
          if (std::abs(k(r, c)) > tol::kraus_structure) ++nonzero;
        if (nonzero > 1)
          throw validation_error(
              "KrausChannel: incoherent tag but a column has multiple "
              "nonzero entries");
      }
    }
  }
  if (class_tag_ == ChannelClass::genuinely_incoherent) {
    for (const auto& k : operators_) {
      for (Eigen::Index r = 0; r < k.rows(); ++r)
        for (Eigen::Index c = 0; c < k.cols(); ++c)
          if (r != c && std::abs(k(r, c)) >= tol::kraus_structure)
            throw validation_error(
                "KrausChannel: genuinely_incoherent tag but operator is not "
                "diagonal");
    }
  }
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  const int da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  std::vector<int> dims = default_factors(a.factor_dims(), da);
  const auto bd = default_factors(b.factor_dims(), db);
  dims.insert(dims.end(), bd.begin(), bd.end());
  return DensityOperator(std::move(out), std::move(dims));
}

PureState tensor(const PureState& a, const PureState& b) {
  const int da = a.dim(), db = b.dim();
  Vector out(da * db);
  for (int i = 0; i < da; ++i)
    out.segment(i * db, db) = a.vector()[i] * b.vector();
  std::vector<int> dims = default_factors(a.factor_dims(), da);
  const auto bd = default_factors(b.factor_dims(), db);
  dims.insert(dims.end(), bd.begin(), bd.end());
  return PureState(std::move(out), std::move(dims));
}

DensityOperator partial_trace(const DensityOperator& state,
                              const std::vector<int>& keep) {
  if (!state.has_factors())
    throw structural_error("partial_trace: state has no factor_dims");
  const auto& dims = state.factor_dims();
  const int nf = static_cast<int>(dims.size());

  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) throw validation_error("partial_trace: empty keep set");
  for (int k : kept)
    if (k < 0 || k >= nf)
      throw validation_error("partial_trace: keep index out of range");

  std::vector<int> traced;
  for (int f = 0; f < nf; ++f)
    if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);

  // strides of each factor in the flattened index (row-major)
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  std::vector<int> kdims, tdims;
  std::vector<long> kstride, tstride;
  for (int f : kept) { kdims.push_back(dims[f]); kstride.push_back(stride[f]); }
  for (int f : traced) { tdims.push_back(dims[f]); tstride.push_back(stride[f]); }

  const long dk = product(kdims);
  const long dt = traced.empty() ? 1 : product(tdims);

  // enumerate flattened offsets of the kept / traced multi-indices
  auto offsets = [](const std::vector<int>& ds, const std::vector<long>& ss,
                    long count) {
    std::vector<long> out(count, 0);
    for (long x = 0; x < count; ++x) {
      long rem = x, off = 0;
      for (int f = static_cast<int>(ds.size()) - 1; f >= 0; --f) {
        off += (rem % ds[f]) * ss[f];
        rem /= ds[f];
      }
      out[x] = off;
    }
    return out;
  };
  const auto koff = offsets(kdims, kstride, dk);
  const auto toff = traced.empty() ? std::vector<long>{0}
                                   : offsets(tdims, tstride, dt);

  Matrix out = Matrix::Zero(dk, dk);
  const auto& m = state.matrix();
  for (long r = 0; r < dk; ++r)
    for (long c = 0; c < dk; ++c) {
      cplx acc(0.0, 0.0);
      for (long e = 0; e < dt; ++e) acc += m(koff[r] + toff[e], koff[c] + toff[e]);
      out(r, c) = acc;
    }
  return DensityOperator(std::move(out), kdims);
}

DensityOperator dephase(const DensityOperator& state) {
  Matrix out = Matrix::Zero(state.dim(), state.dim());
  out.diagonal() = state.matrix().diagonal();
  return DensityOperator(std::move(out), state.factor_dims());
}

DensityOperator dephase(const DensityOperator& state, const Matrix& basis) {
  if (basis.rows() != state.dim() || basis.cols() != state.dim())
    throw validation_error("dephase: basis dimension mismatch");
  const double dev = (basis.adjoint() * basis -
                      Matrix::Identity(state.dim(), state.dim()))
                         .cwiseAbs()
                         .maxCoeff();
  if (dev > tol::basis_unitarity)
    throw validation_error("dephase: basis not unitary (deviation " +
                           std::to_string(dev) + ")");
  const Matrix rotated = basis.adjoint() * state.matrix() * basis;
  Matrix diag = Matrix::Zero(state.dim(), state.dim());
  diag.diagonal() = rotated.diagonal();
  return DensityOperator(basis * diag * basis.adjoint(), state.factor_dims());
}

double von_neumann_entropy(const DensityOperator& state) {
  const auto& ev = state.eigenvalues();
  return kernels::neg_xlog2x_sum(ev.data(), static_cast<std::size_t>(ev.size()));
}

double shannon_entropy(const Eigen::VectorXd& p) {
  if (p.size() == 0) throw validation_error("shannon_entropy: empty vector");
  for (int i = 0; i < p.size(); ++i)
    if (p[i] < -1e-12)
      throw validation_error("shannon_entropy: negative entry " +
                             std::to_string(p[i]));
  const double sum = p.sum();
  if (std::abs(sum - 1.0) > 1e-6)
    throw validation_error("shannon_entropy: probabilities sum to " +
                           std::to_string(sum));
  Eigen::VectorXd q = p.cwiseMax(0.0) / p.cwiseMax(0.0).sum();
  return kernels::neg_xlog2x_sum(q.data(), static_cast<std::size_t>(q.size()));
}

double binary_entropy(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw validation_error("binary_entropy: argument outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  const double pair[2] = {x, 1.0 - x};
  return kernels::neg_xlog2x_sum(pair, 2);
}

namespace {

Matrix matrix_sqrt_psd(const DensityOperator& a) {
  const Eigen::VectorXd root = a.eigenvalues().cwiseSqrt();
  return a.eigenvectors() * root.asDiagonal() * a.eigenvectors().adjoint();
}

}  // namespace

double uhlmann_fidelity(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim())
    throw validation_error("uhlmann_fidelity: dimension mismatch");
  // (Tr sqrt(sqrt(a) b sqrt(a)))^2 = (sum of singular values of
  // sqrt(a) sqrt(b))^2; the SVD form avoids taking square roots of
  // near-zero eigenvalues
  const Matrix m = matrix_sqrt_psd(a) * matrix_sqrt_psd(b);
  Eigen::JacobiSVD<Matrix> svd(m);
  const double root_sum = svd.singularValues().sum();
  return std::min(1.0, root_sum * root_sum);
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim())
    throw validation_error("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix() - b.matrix());
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityOperator apply_channel(const KrausChannel& ch,
                              const DensityOperator& state) {
  if (ch.dim_in() != state.dim())
    throw validation_error("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.operators()) out += k * state.matrix() * k.adjoint();
  std::vector<int> dims =
      ch.dim_out() == state.dim() ? state.factor_dims() : std::vector<int>{};
  return DensityOperator(std::move(out), std::move(dims));
}

std::vector<SelectiveOutcome> apply_kraus_selective(
    const KrausChannel& ch, const DensityOperator& state) {
  if (ch.dim_in() != state.dim())
    throw validation_error("apply_kraus_selective: dimension mismatch");
  std::vector<SelectiveOutcome> outcomes;
  for (const auto& k : ch.operators()) {
    Matrix m = k * state.matrix() * k.adjoint();
    const double p = m.trace().real();
    if (p < tol::outcome_prob) continue;
    outcomes.push_back({p, DensityOperator(m / p)});
  }
  return outcomes;
}

Matrix random_unitary(int dim, Prng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    q.col(j) *= mag > 0 ? r(j, j) / mag : cplx(1.0, 0.0);
  }
  return q;
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  Prng rng(seed);
  return random_unitary(dim, rng);
}

DensityOperator random_state(int dim, int rank, std::uint64_t seed) {
  if (rank < 1 || rank > dim)
    throw validation_error("random_state: rank must be in [1, dim]");
  Prng rng(seed);
  Matrix g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j)
      g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(std::move(m), {}, seed);
}

PureState random_pure(int dim, std::uint64_t seed) {
  Prng rng(seed);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = cplx(rng.gaussian(), rng.gaussian());
  v /= v.norm();
  return PureState(std::move(v), {}, seed);
}

}  // namespace cop
