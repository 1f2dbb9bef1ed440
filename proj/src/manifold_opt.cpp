/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/manifold_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cop/parallel.hpp"
#include "cop/prng.hpp"

namespace cop {

Matrix exp_map(const UnitaryParams& p) {
  const int d = p.dim;
  if (d < 1) throw validation_error("exp_map: dim must be positive");
  if (p.params.size() != static_cast<Eigen::Index>(d) * d)
    throw validation_error("exp_map: expected dim^2 parameters");

  // H = -iA is Hermitian; U = exp(A) = exp(iH)
  Matrix h(d, d);
  for (int k = 0; k < d; ++k) h(k, k) = p.params[k];
  int idx = d;
  for (int r = 0; r < d; ++r) {
    for (int c = r + 1; c < d; ++c) {
      const double x = p.params[idx++];
      const double y = p.params[idx++];
      h(r, c) = cplx(y, -x);  // A(r,c) = x + iy
      h(c, r) = cplx(y, x);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(d);
  for (int k = 0; k < d; ++k)
    phases[k] = std::polar(1.0, es.eigenvalues()[k]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

struct abort_restart {};  // non-finite objective value

struct NmResult {
  Eigen::VectorXd x;
  double fx = std::numeric_limits<double>::infinity();
  int evals = 0;
  bool converged = false;
};

// Nelder-Mead with the dimension-adaptive coefficients. Iterates until the
// simplex f-spread drops below ftol, the vertex spread below xtol, or the
// iteration budget runs out.
NmResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                     const Eigen::VectorXd& x0, double h, int max_iters,
                     double ftol, double xtol) {
  const int n = static_cast<int>(x0.size());
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / n;
  const double gamma = 0.75 - 0.5 / n;
  const double delta = 1.0 - 1.0 / n;

  std::vector<Eigen::VectorXd> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (int i = 1; i <= n; ++i) xs[i][i - 1] += h;
  NmResult res;
  for (int i = 0; i <= n; ++i) {
    fs[i] = f(xs[i]);
    ++res.evals;
  }

  std::vector<int> order(n + 1);
  for (int iter = 0; iter < max_iters; ++iter) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fs[a] < fs[b]; });
    const int lo = order[0], hi = order[n], nh = order[n - 1];

    double spread_x = 0.0;
    for (int i = 1; i <= n; ++i)
      spread_x = std::max(spread_x,
                          (xs[order[i]] - xs[lo]).cwiseAbs().maxCoeff());
    if (fs[hi] - fs[lo] <= ftol || spread_x <= xtol) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += xs[order[i]];
    centroid /= n;

    const Eigen::VectorXd xr = centroid + alpha * (centroid - xs[hi]);
    const double fr = f(xr);
    ++res.evals;

    if (fr < fs[lo]) {
      const Eigen::VectorXd xe = centroid + beta * (xr - centroid);
      const double fe = f(xe);
      ++res.evals;
      if (fe < fr) { xs[hi] = xe; fs[hi] = fe; }
      else         { xs[hi] = xr; fs[hi] = fr; }
    } else if (fr < fs[nh]) {
      xs[hi] = xr;
      fs[hi] = fr;
    } else {
      // contract toward the better of the worst point and its reflection
      const bool outside = fr < fs[hi];
      const Eigen::VectorXd base = outside ? xr : xs[hi];
      const Eigen::VectorXd xc = centroid + gamma * (base - centroid);
      const double fc = f(xc);
      ++res.evals;
      if (fc < std::min(fr, fs[hi])) {
        xs[hi] = xc;
        fs[hi] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          xs[order[i]] = xs[lo] + delta * (xs[order[i]] - xs[lo]);
          fs[order[i]] = f(xs[order[i]]);
          ++res.evals;
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fs[i] < fs[best]) best = i;
  res.x = xs[best];
  res.fx = fs[best];
  return res;
}

}  // namespace

UnitarySearchResult minimize_over_unitaries(int dim, const UnitaryObjective& f,
                                            const OptimizerConfig& config) {
  if (dim < 1) throw validation_error("minimize_over_unitaries: bad dim");
  if (config.restarts < 1)
    throw validation_error("minimize_over_unitaries: restarts must be >= 1");

  const int n = dim * dim;
  auto wrapped = [&](const Eigen::VectorXd& x) {
    const double v = f(exp_map({dim, x}));
    if (!std::isfinite(v)) throw abort_restart{};
    return v;
  };

  struct RestartOutcome {
    Eigen::VectorXd x;
    double fx = std::numeric_limits<double>::infinity();
    bool converged = false;
  };
  std::vector<RestartOutcome> outcomes(config.restarts);

  const Prng root(config.seed);
  parallel_for(static_cast<std::size_t>(config.restarts), [&](std::size_t r) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    if (r > 0) {
      Prng rng = root.split(r);
      for (int i = 0; i < n; ++i) x0[i] = rng.gaussian();
    }
    try {
      // three simplex scales sharing the iteration budget: a broad search,
      // then re-initialized polishes around the incumbent
      const double scales[3] = {0.6, 0.05, 0.004};
      const int budgets[3] = {config.max_iters / 2, config.max_iters / 4,
                              config.max_iters -
                                  config.max_iters / 2 - config.max_iters / 4};
      RestartOutcome out;
      out.x = x0;
      out.fx = wrapped(x0);
      for (int s = 0; s < 3; ++s) {
        if (budgets[s] <= 0) continue;
        NmResult nm = nelder_mead(wrapped, out.x, scales[s], budgets[s],
                                  config.objective_tol, config.step_tol);
        if (nm.fx < out.fx) {
          out.fx = nm.fx;
          out.x = nm.x;
        }
        out.converged = nm.converged;
      }
      outcomes[r] = std::move(out);
    } catch (const abort_restart&) {
      outcomes[r] = RestartOutcome{};  // recorded as +inf
    }
  });

  UnitarySearchResult result;
  result.per_restart_values.reserve(config.restarts);
  int best = -1;
  for (int r = 0; r < config.restarts; ++r) {
    result.per_restart_values.push_back(outcomes[r].fx);
    if (best < 0 || outcomes[r].fx < outcomes[best].fx) best = r;
  }
  if (!std::isfinite(outcomes[best].fx))
    throw validation_error(
        "minimize_over_unitaries: every restart hit a non-finite objective");
  result.best_params = {dim, outcomes[best].x};
  result.best_value = outcomes[best].fx;
  result.converged = outcomes[best].converged;
  return result;
}

double grid_oracle(int dim, const UnitaryObjective& f, std::int64_t n_samples,
                   std::uint64_t seed) {
  if (n_samples < 1) throw validation_error("grid_oracle: n_samples < 1");
  double best = f(Matrix::Identity(dim, dim));

  const Prng root(seed);
  const unsigned chunks =
      std::min<std::int64_t>(n_samples, 8 * worker_threads());
  std::vector<double> mins(chunks, std::numeric_limits<double>::infinity());
  parallel_for(chunks, [&](std::size_t c) {
    const std::int64_t lo = static_cast<std::int64_t>(c) * n_samples / chunks;
    const std::int64_t hi =
        static_cast<std::int64_t>(c + 1) * n_samples / chunks;
    double local = std::numeric_limits<double>::infinity();
    for (std::int64_t s = lo; s < hi; ++s) {
      Prng rng = root.split(static_cast<std::uint64_t>(s));
      local = std::min(local, f(random_unitary(dim, rng)));
    }
    mins[c] = local;
  });
  for (double m : mins) best = std::min(best, m);
  return best;
}

}  // namespace cop
