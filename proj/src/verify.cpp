/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cop/aosd.hpp"
#include "cop/coherence.hpp"
#include "cop/entanglement.hpp"
#include "cop/parallel.hpp"
#include "cop/purification.hpp"

namespace cop {

namespace {

constexpr double kIneqTol = 1e-6;
constexpr double kP6Tol = 1e-4;

struct SampleVerdict {
  bool pass = false;
  double margin = 0.0;
  nlohmann::json note;  // optional per-sample diagnostics
};

std::uint64_t hash_prop(const std::string& prop) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : prop) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

OptimizerConfig with_seed(OptimizerConfig opt, std::uint64_t seed) {
  opt.seed = seed;
  return opt;
}

OptimizerConfig boosted(OptimizerConfig opt, std::uint64_t seed) {
  opt.restarts *= 4;
  opt.seed = seed;
  return opt;
}

double cop_value(const DensityOperator& rho, const OptimizerConfig& opt) {
  return cop_fixed_basis(rho, opt).value_fixed_basis;
}

DensityOperator sample_two_qubit(std::uint64_t seed) {
  Prng g(seed);
  const int rank = 1 + static_cast<int>(g.next_u64() % 4);
  const DensityOperator raw = random_state(4, rank, g.next_u64());
  return DensityOperator(raw.matrix(), {2, 2}, seed);
}

// ---- per-proposition sample evaluations ----

SampleVerdict eval_p1(int dim, std::uint64_t seed, const OptimizerConfig& opt) {
  const DensityOperator rho = sample_mixed_state(dim, seed);
  const double cr = relative_entropy_coherence(rho).value;
  const double cp = cop_value(rho, opt);
  SampleVerdict v;
  v.margin = cp - cr;
  v.pass = v.margin >= -kIneqTol;
  if (rho.rank() == 1) v.pass = v.pass && std::abs(v.margin) <= kIneqTol;
  return v;
}

SampleVerdict eval_p2(int dim, std::uint64_t seed, const OptimizerConfig& opt) {
  const DensityOperator rho = sample_mixed_state(dim, seed);
  SampleVerdict v;
  v.margin = cop_value(rho, opt) - cop_of_dephased(rho);
  v.pass = v.margin >= -kIneqTol;
  return v;
}

SampleVerdict eval_p3(int dim, std::uint64_t seed, const OptimizerConfig& opt) {
  Prng g(seed);
  const int rank = 1 + static_cast<int>(g.next_u64() % dim);
  const DensityOperator rho = random_state(dim, rank, g.next_u64());
  const int n_kraus = 2 + static_cast<int>(g.next_u64() % 3);
  const KrausChannel gio = make_gio_channel(dim, n_kraus, g.next_u64());
  SampleVerdict v;
  v.margin = cop_value(rho, opt) - cop_value(apply_channel(gio, rho), opt);
  v.pass = v.margin >= -kIneqTol;
  return v;
}

SampleVerdict eval_p4(int dim, std::uint64_t seed, const OptimizerConfig& opt) {
  Prng g(seed);
  const int rank = 1 + static_cast<int>(g.next_u64() % dim);
  const DensityOperator rho = random_state(dim, rank, g.next_u64());
  const int n_kraus = 2 + static_cast<int>(g.next_u64() % 2);
  const KrausChannel ch = make_incoherent_channel(dim, n_kraus, g.next_u64());
  double average = 0.0;
  for (const auto& [p, out] : apply_kraus_selective(ch, rho))
    average += p * cop_value(out, opt);
  SampleVerdict v;
  v.margin = cop_value(rho, opt) - average;
  v.pass = v.margin >= -kIneqTol;
  return v;
}

SampleVerdict eval_p5(int dim, std::uint64_t seed, const OptimizerConfig& opt) {
  Prng g(seed);
  const DensityOperator rho = random_state(dim, dim, g.next_u64());
  const DensityOperator tau = random_state(dim, dim, g.next_u64());
  double t = 0.4 * g.uniform();
  double big_t = 1.0;
  Matrix mixed;
  // shrink the mixing weight until the purified-trace-distance proxy
  // T = sqrt(1 - F) is inside the Fannes regime
  for (int attempt = 0; attempt < 64; ++attempt) {
    mixed = (1.0 - t) * rho.matrix() + t * tau.matrix();
    big_t = std::sqrt(std::max(
        0.0, 1.0 - uhlmann_fidelity(rho, DensityOperator(mixed))));
    if (big_t <= 0.45) break;
    t *= 0.5;
  }
  const DensityOperator sigma(mixed);
  const double diff = std::abs(cop_value(sigma, opt) - cop_value(rho, opt));
  const double proof_bound =
      2.0 * big_t * std::log2(static_cast<double>(dim) * dim) +
      (big_t > 0 ? binary_entropy(big_t) : 0.0);
  const double stated_bound =
      2.0 * big_t * std::log2(static_cast<double>(dim)) +
      (big_t > 0 ? binary_entropy(big_t) : 0.0);
  SampleVerdict v;
  v.margin = proof_bound - diff;
  v.pass = v.margin >= -1e-9;
  v.note = {{"stated_bound_holds", diff <= stated_bound + 1e-9}};
  return v;
}

SampleVerdict eval_p6(int dim, std::uint64_t seed, const OptimizerConfig& opt) {
  const DensityOperator rho = sample_mixed_state(dim, seed);
  // the U(dim^2) formation search needs a deeper iteration budget beyond
  // qubits
  OptimizerConfig cf_opt = opt;
  if (dim >= 3) cf_opt.max_iters = std::max(cf_opt.max_iters, 4 * opt.max_iters);
  const double cf = coherence_of_formation(rho, cf_opt).value;
  SampleVerdict v;
  v.margin = (cf + von_neumann_entropy(rho)) - cop_value(rho, opt);
  v.pass = v.margin >= -kP6Tol;
  return v;
}

SampleVerdict eval_p7(int dim, std::uint64_t seed, const OptimizerConfig& opt) {
  const DensityOperator rho = sample_mixed_state(dim, seed);
  const CnotTransferReport rep = check_prop7(rho, opt);
  SampleVerdict v;
  v.margin = std::min(kIneqTol - rep.equality_gap,
                      rep.cop - rep.eop_produced);
  v.pass = rep.equality_gap <= kIneqTol && rep.upper_bound_holds;
  return v;
}

SampleVerdict eval_p8(int /*dim*/, std::uint64_t seed,
                      const OptimizerConfig& opt) {
  const DensityOperator rho = sample_two_qubit(seed);
  const CopEopReport rep = check_prop8(rho, opt);
  SampleVerdict v;
  v.margin = rep.gap;
  v.pass = rep.inequality_holds;
  v.note = {{"optimizer_coincides", rep.optimizer_coincides},
            {"coincidence_gap", rep.coincidence_gap},
            {"additivity_equality", rep.additivity_equality},
            {"additivity_gap", rep.additivity_gap}};
  return v;
}

SampleVerdict eval_qr(int dim, std::uint64_t seed, const OptimizerConfig& opt) {
  Prng g(seed);
  const int kind = static_cast<int>(g.next_u64() % 3);
  SampleVerdict v;
  if (kind == 0) {  // general mixed: clamped nonnegativity must not throw
    const DensityOperator rho = random_state(dim, dim, g.next_u64());
    v.margin = residual_quantumness(rho, opt);
    v.pass = true;
  } else if (kind == 1) {  // pure: identically zero
    const DensityOperator rho = random_state(dim, 1, g.next_u64());
    const double qr = residual_quantumness(rho, opt);
    v.margin = kIneqTol - qr;
    v.pass = qr <= kIneqTol;
  } else {  // diagonal: dephasing fixed point
    const DensityOperator rho = dephase(random_state(dim, dim, g.next_u64()));
    const double qr = residual_quantumness(rho, opt);
    v.margin = kIneqTol - qr;
    v.pass = qr <= kIneqTol;
  }
  return v;
}

using SampleFn = SampleVerdict (*)(int, std::uint64_t, const OptimizerConfig&);

SampleFn sample_fn(const std::string& prop) {
  if (prop == "P1") return eval_p1;
  if (prop == "P2") return eval_p2;
  if (prop == "P3") return eval_p3;
  if (prop == "P4") return eval_p4;
  if (prop == "P5") return eval_p5;
  if (prop == "P6") return eval_p6;
  if (prop == "P7") return eval_p7;
  if (prop == "P8") return eval_p8;
  if (prop == "QR") return eval_qr;
  return nullptr;
}

VerificationReport aosd_checks(const SuiteConfig& config) {
  VerificationReport report;
  report.prop = "AOSD";
  report.worst_margin = std::numeric_limits<double>::infinity();

  const auto grid = alpha_grid(0.0, 1.0, 21);
  const auto rows =
      aosd_sweep(grid, SweepCondition::optimal,
                 with_seed(config.opt, Prng(config.seed).split(101).seed()));
  const auto const_grid = alpha_grid(0.0, 0.5, 11);
  const auto const_rows =
      aosd_sweep(const_grid, SweepCondition::constant_ps,
                 with_seed(config.opt, Prng(config.seed).split(102).seed()));

  double prev_target = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const double target = binary_entropy(0.5 * row.ps);
    double margin = std::min(1e-4 - std::abs(row.cop - target),
                             1e-8 - row.concurrence);
    // h(p_s/2) increases with p_s; the grid walks p_s downward, so the
    // target must strictly decrease row to row
    if (i > 0) margin = std::min(margin, prev_target - target);
    prev_target = target;
    ++report.n_samples;
    if (margin >= 0.0) ++report.n_pass;
    report.worst_margin = std::min(report.worst_margin, margin);
  }
  for (const auto& row : const_rows) {
    const double margin = 1e-8 - row.concurrence;
    ++report.n_samples;
    if (margin >= 0.0) ++report.n_pass;
    report.worst_margin = std::min(report.worst_margin, margin);
  }
  report.extra = {{"optimal_points", rows.size()},
                  {"constant_ps_points", const_rows.size()}};
  return report;
}

}  // namespace

DensityOperator sample_mixed_state(int dim, std::uint64_t seed) {
  Prng g(seed);
  const int rank = 1 + static_cast<int>(g.next_u64() % dim);
  return random_state(dim, rank, g.next_u64());
}

std::vector<std::string> all_prop_ids() {
  return {"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "QR", "AOSD",
          "WITNESS"};
}

std::vector<VerificationReport> run_suite(const SuiteConfig& config) {
  std::vector<std::string> props =
      config.props.empty() ? all_prop_ids() : config.props;

  std::vector<VerificationReport> reports;
  for (const auto& prop : props) {
    if (prop == "AOSD") {
      reports.push_back(aosd_checks(config));
      continue;
    }
    if (prop == "WITNESS") {
      reports.push_back(witness_checks());
      continue;
    }
    const SampleFn fn = sample_fn(prop);
    if (!fn) throw validation_error("unknown proposition id: " + prop);

    VerificationReport report;
    report.prop = prop;
    report.worst_margin = std::numeric_limits<double>::infinity();
    const Prng prop_root = Prng(config.seed).split(hash_prop(prop));

    auto blocks = config.dim_samples;
    if (prop == "P7")  // qubit inputs only
      blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                  [](auto& b) { return b.first != 2; }),
                   blocks.end());
    if (prop == "P8" && !blocks.empty())  // two-qubit states
      blocks = {{4, blocks.front().second}};

    for (const auto& [dim, n] : blocks) {
      struct Slot {
        SampleVerdict verdict;
        std::uint64_t seed = 0;
        bool rescued = false;
        bool errored = false;
        std::string error;
      };
      std::vector<Slot> slots(static_cast<std::size_t>(n));
      const Prng dim_root = prop_root.split(static_cast<std::uint64_t>(dim));

      parallel_for(slots.size(), [&](std::size_t i) {
        Slot& slot = slots[i];
        slot.seed = dim_root.split(i).seed();
        try {
          slot.verdict =
              fn(dim, slot.seed, with_seed(config.opt, dim_root.split(i ^ 0x5eedull).seed()));
          if (!slot.verdict.pass) {
            // optimizer-failure triage: re-run with 4x restarts
            const SampleVerdict retry = fn(
                dim, slot.seed,
                boosted(config.opt, dim_root.split(i ^ 0xb005ull).seed()));
            if (retry.pass) slot.rescued = true;
            slot.verdict = retry;
          }
        } catch (const std::exception& e) {
          slot.errored = true;
          slot.error = e.what();
        }
      });

      std::int64_t dim_pass = 0;
      nlohmann::json notes = nlohmann::json::array();
      for (const auto& slot : slots) {
        ++report.n_samples;
        if (slot.errored) {
          report.failing_seeds.push_back(slot.seed);
          report.extra["errors"].push_back(
              {{"seed", slot.seed}, {"what", slot.error}});
          continue;
        }
        if (slot.verdict.pass) {
          ++report.n_pass;
          ++dim_pass;
        } else {
          report.failing_seeds.push_back(slot.seed);
        }
        if (slot.rescued) ++report.rescued;
        report.worst_margin =
            std::min(report.worst_margin, slot.verdict.margin);
        if (!slot.verdict.note.is_null()) notes.push_back(slot.verdict.note);
      }
      report.per_dim.push_back(
          {{"dim", dim}, {"n", n}, {"pass", dim_pass}});

      if (prop == "P5") {
        std::int64_t stated_holds = 0;
        for (const auto& nj : notes)
          if (nj.value("stated_bound_holds", false)) ++stated_holds;
        report.extra["stated_bound_holds"] = stated_holds;
      }
      if (prop == "P8") {
        std::int64_t coincide = 0, additive = 0;
        for (const auto& nj : notes) {
          if (nj.value("optimizer_coincides", false)) ++coincide;
          if (nj.value("additivity_equality", false)) ++additive;
        }
        report.extra["optimizer_coincidence_count"] = coincide;
        report.extra["additivity_equality_count"] = additive;
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

VerificationReport witness_checks() {
  VerificationReport report;
  report.prop = "WITNESS";
  report.worst_margin = std::numeric_limits<double>::infinity();
  OptimizerConfig opt;
  opt.seed = 424242;

  auto record = [&](bool pass, double margin, const char* name) {
    ++report.n_samples;
    if (pass) ++report.n_pass;
    report.worst_margin = std::min(report.worst_margin, margin);
    report.extra[name] = {{"pass", pass}, {"margin", margin}};
  };

  // convexity violation: C_P of a classical mixture exceeds the weighted sum
  {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 0.3;
    m(1, 1) = 0.7;
    const double cp = cop_value(DensityOperator(m), opt);
    const double expected = binary_entropy(0.3);
    const double weighted_sum = 0.0;  // both |0><0| and |1><1| have C_P = 0
    record(std::abs(cp - expected) <= 1e-6 && cp > weighted_sum + 1e-6,
           cp - weighted_sum, "convexity_violation");
    report.extra["convexity_violation"]["cop"] = cp;
  }
  // randomizing-channel increase on a non-uniform diagonal state
  {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 0.9;
    m(1, 1) = 0.1;
    const DensityOperator rho(m);
    const DensityOperator out = apply_channel(make_randomizing_channel(2), rho);
    const double before = cop_value(rho, opt);
    const double after = cop_value(out, opt);
    record(std::abs(before - binary_entropy(0.9)) <= 1e-6 &&
               std::abs(after - 1.0) <= 1e-6 && after > before + 1e-6,
           after - before, "randomizing_increase");
  }
  // uniform diagonal: equality, no increase
  {
    const DensityOperator rho(Matrix::Identity(2, 2) * 0.5);
    const DensityOperator out = apply_channel(make_randomizing_channel(2), rho);
    const double before = cop_value(rho, opt);
    const double after = cop_value(out, opt);
    record(std::abs(after - before) <= 1e-6, 1e-6 - std::abs(after - before),
           "uniform_no_increase");
  }
  return report;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (r.n_pass != r.n_samples) return false;
  return true;
}

nlohmann::json to_json(const VerificationReport& r) {
  return {{"prop", r.prop},
          {"n_samples", r.n_samples},
          {"n_pass", r.n_pass},
          {"worst_margin", r.worst_margin},
          {"failing_seeds", r.failing_seeds},
          {"rescued", r.rescued},
          {"per_dim", r.per_dim},
          {"extra", r.extra}};
}

nlohmann::json to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

}  // namespace cop
