/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cop/aosd.hpp"
#include "cop/coherence.hpp"
#include "cop/entanglement.hpp"
#include "cop/purification.hpp"
#include "cop/state_io.hpp"
#include "cop/verify.hpp"

namespace {

using nlohmann::json;

// JSON numbers are emitted with 12 significant digits, CSV with 9:
// reproducible above the optimizer noise floor without false precision.
double sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

json round_numbers(const json& j) {
  if (j.is_number_float()) return sig12(j.get<double>());
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it)
      out[it.key()] = round_numbers(it.value());
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& e : j) out.push_back(round_numbers(e));
    return out;
  }
  return j;
}

void emit(const json& j, const std::string& out_path) {
  const json rounded = round_numbers(j);
  if (out_path.empty()) {
    std::cout << rounded.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw cop::validation_error("cannot open output: " + out_path);
    out << rounded.dump(2) << "\n";
  }
}

void emit_csv(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw cop::validation_error("cannot open output: " + out_path);
    out << text;
  }
}

struct OptFlags {
  cop::OptimizerConfig config;
  void attach(CLI::App* cmd) {
    cmd->add_option("--restarts", config.restarts, "optimizer restarts");
    cmd->add_option("--max-iters", config.max_iters,
                    "simplex iterations per restart");
    cmd->add_option("--opt-tol", config.objective_tol, "objective tolerance");
    cmd->add_option("--step-tol", config.step_tol, "parameter step tolerance");
    cmd->add_option("--seed", config.seed, "random seed");
  }
};

json optimizer_json(const cop::UnitarySearchResult& r, int restarts) {
  return {{"restarts", restarts},
          {"best", r.best_value},
          {"converged", r.converged}};
}

std::vector<double> parse_grid(const std::string& spec) {
  // start:stop:count
  try {
    double start = 0.0, stop = 1.0;
    int count = 21;
    std::istringstream ss(spec);
    std::string part;
    if (std::getline(ss, part, ':')) start = std::stod(part);
    if (std::getline(ss, part, ':')) stop = std::stod(part);
    if (std::getline(ss, part, ':')) count = std::stoi(part);
    return cop::alpha_grid(start, stop, count);
  } catch (const std::logic_error&) {
    throw cop::validation_error("--alpha-grid expects start:stop:count");
  }
}

std::pair<int, int> parse_split(const std::string& spec) {
  const auto x = spec.find('x');
  if (x == std::string::npos)
    throw cop::validation_error("--split expects AxB, e.g. 2x2");
  try {
    return {std::stoi(spec.substr(0, x)), std::stoi(spec.substr(x + 1))};
  } catch (const std::logic_error&) {
    throw cop::validation_error("--split expects AxB, e.g. 2x2");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence-of-purification toolkit"};
  app.require_subcommand(1);

  // compute
  auto* compute = app.add_subcommand(
      "compute", "coherence of purification of a state file");
  std::string compute_state, compute_out;
  bool compute_adapted = false, compute_sweep = false;
  OptFlags compute_opt;
  compute->add_option("--state", compute_state, "state JSON file")->required();
  compute->add_flag("--adapted", compute_adapted,
                    "report the ancilla-adapted closed form instead");
  compute->add_flag("--sweep-ancilla", compute_sweep,
                    "sweep ancilla dims up to dim*rank, report the minimum");
  compute->add_option("--out", compute_out, "output file (default stdout)");
  compute_opt.attach(compute);

  // residual
  auto* residual =
      app.add_subcommand("residual", "residual quantumness of a state file");
  std::string residual_state, residual_out;
  OptFlags residual_opt;
  residual->add_option("--state", residual_state, "state JSON file")
      ->required();
  residual->add_option("--out", residual_out, "output file");
  residual_opt.attach(residual);

  // eop
  auto* eop = app.add_subcommand(
      "eop", "entanglement of purification of a bipartite state file");
  std::string eop_state, eop_out, eop_split;
  OptFlags eop_opt;
  eop->add_option("--state", eop_state, "state JSON file")->required();
  eop->add_option("--split", eop_split, "ancilla split AxB (default balanced)");
  eop->add_option("--out", eop_out, "output file");
  eop_opt.attach(eop);

  // aosd
  auto* aosd = app.add_subcommand(
      "aosd", "assisted-discrimination sweep (CSV: alpha,ps,concurrence,cop,"
              "cop_dephased)");
  std::string aosd_grid = "0:1:21", aosd_cond = "optimal", aosd_out;
  double aosd_pplus = 0.5;
  bool aosd_phases = false;
  OptFlags aosd_opt;
  aosd->add_option("--alpha-grid", aosd_grid, "grid start:stop:count");
  aosd->add_option("--condition", aosd_cond, "optimal | constant")
      ->check(CLI::IsMember({"optimal", "constant"}));
  aosd->add_option("--p-plus", aosd_pplus, "prior of the + preparation");
  aosd->add_flag("--random-phases", aosd_phases,
                 "random overlap phases (seeded)");
  aosd->add_option("--out", aosd_out, "output CSV file");
  aosd_opt.attach(aosd);

  // verify
  auto* verify =
      app.add_subcommand("verify", "randomized proposition verification");
  std::string verify_props = "all", verify_dims = "2,3", verify_out;
  std::int64_t verify_n = 200;
  OptFlags verify_opt;
  verify->add_option("--props", verify_props,
                     "all or comma list (P1..P8,QR,AOSD,WITNESS)");
  verify->add_option("--n", verify_n, "samples per proposition per dim");
  verify->add_option("--dims", verify_dims, "comma list of dims");
  verify->add_option("--out", verify_out, "report JSON file");
  verify_opt.attach(verify);

  // oracle
  auto* oracle = app.add_subcommand(
      "oracle", "Haar-sampling oracle for the C_P objective of a state");
  std::string oracle_state, oracle_out;
  std::int64_t oracle_samples = 100000;
  OptFlags oracle_opt;
  oracle->add_option("--state", oracle_state, "state JSON file")->required();
  oracle->add_option("--samples", oracle_samples, "Haar samples");
  oracle->add_option("--out", oracle_out, "output file");
  oracle_opt.attach(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (compute->parsed()) {
      const cop::DensityOperator rho = cop::load_density_file(compute_state);
      json out;
      if (compute_adapted) {
        out = {{"value", cop::cop_adapted(rho)},
               {"definition", "adapted"},
               {"ancilla_dim", rho.rank()},
               {"optimizer", nullptr}};
      } else if (compute_sweep) {
        const auto sweep = cop::cop_sweep_ancilla(rho, compute_opt.config);
        const auto* best = &sweep.front();
        json per_dim = json::array();
        for (const auto& r : sweep) {
          per_dim.push_back({{"ancilla_dim", r.ancilla_dim},
                             {"value", r.value_fixed_basis}});
          if (r.value_fixed_basis < best->value_fixed_basis) best = &r;
        }
        out = {{"value", best->value_fixed_basis},
               {"definition", "fixed_basis"},
               {"ancilla_dim", best->ancilla_dim},
               {"optimizer", optimizer_json(best->optimizer,
                                            compute_opt.config.restarts)},
               {"sweep", per_dim}};
      } else {
        const cop::CopResult r = cop::cop_fixed_basis(rho, compute_opt.config);
        out = {{"value", r.value_fixed_basis},
               {"definition", "fixed_basis"},
               {"ancilla_dim", r.ancilla_dim},
               {"optimizer",
                optimizer_json(r.optimizer, compute_opt.config.restarts)},
               {"adapted", r.value_adapted}};
      }
      emit(out, compute_out);
    } else if (residual->parsed()) {
      const cop::DensityOperator rho = cop::load_density_file(residual_state);
      const cop::CopResult r = cop::cop_fixed_basis(rho, residual_opt.config);
      const double dephased = cop::cop_of_dephased(rho);
      double value = r.value_fixed_basis - dephased;
      if (value < -1e-6)
        throw cop::validation_error(
            "residual quantumness negative beyond tolerance (optimizer "
            "failure)");
      value = std::max(0.0, value);
      emit({{"value", value},
            {"cop", r.value_fixed_basis},
            {"cop_dephased", dephased}},
           residual_out);
    } else if (eop->parsed()) {
      const cop::DensityOperator rho = cop::load_density_file(eop_state);
      std::optional<std::pair<int, int>> split;
      if (!eop_split.empty()) split = parse_split(eop_split);
      const cop::EopResult e =
          cop::entanglement_of_purification_result(rho, eop_opt.config, split);
      const double cp =
          cop::cop_bipartite(rho, eop_opt.config).value_fixed_basis;
      emit({{"eop", e.value},
            {"cop", cp},
            {"gap", cp - e.value},
            {"split", std::to_string(e.ancilla_a) + "x" +
                          std::to_string(e.ancilla_b)}},
           eop_out);
    } else if (aosd->parsed()) {
      const auto grid = parse_grid(aosd_grid);
      const auto cond = aosd_cond == "optimal"
                            ? cop::SweepCondition::optimal
                            : cop::SweepCondition::constant_ps;
      const auto rows =
          cop::aosd_sweep(grid, cond, aosd_opt.config, aosd_pplus,
                          aosd_phases, aosd_opt.config.seed);
      std::string csv = "alpha,ps,concurrence,cop,cop_dephased\n";
      char line[256];
      for (const auto& r : rows) {
        std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g,%.9g\n",
                      r.alpha_abs, r.ps, r.concurrence, r.cop, r.cop_dephased);
        csv += line;
      }
      emit_csv(csv, aosd_out);
    } else if (verify->parsed()) {
      cop::SuiteConfig cfg;
      cfg.opt = verify_opt.config;
      cfg.seed = verify_opt.config.seed;
      if (verify_props != "all") {
        std::istringstream ss(verify_props);
        std::string p;
        while (std::getline(ss, p, ',')) cfg.props.push_back(p);
      }
      cfg.dim_samples.clear();
      std::istringstream ds(verify_dims);
      std::string d;
      while (std::getline(ds, d, ','))
        cfg.dim_samples.emplace_back(std::stoi(d), verify_n);
      const auto reports = cop::run_suite(cfg);
      emit(cop::to_json(reports), verify_out);
      for (const auto& r : reports)
        std::fprintf(stderr, "%-8s %lld/%lld pass, worst margin %.3e\n",
                     r.prop.c_str(), static_cast<long long>(r.n_pass),
                     static_cast<long long>(r.n_samples), r.worst_margin);
      if (!cop::all_passed(reports)) return 1;
    } else if (oracle->parsed()) {
      const cop::DensityOperator rho = cop::load_density_file(oracle_state);
      const cop::CopObjective obj = cop::make_cop_objective(rho);
      const double oracle_value = cop::grid_oracle(
          obj.ancilla_dim, obj.fn, oracle_samples, oracle_opt.config.seed);
      const cop::CopResult r = cop::cop_fixed_basis(rho, oracle_opt.config);
      emit({{"oracle", oracle_value},
            {"cop", r.value_fixed_basis},
            {"difference", r.value_fixed_basis - oracle_value},
            {"n_samples", oracle_samples},
            {"seed", oracle_opt.config.seed}},
           oracle_out);
    }
  } catch (const cop::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
