#include "mwmpc/cli.hpp"

#include "mwmpc/errors.hpp"
#include "mwmpc/kernels.hpp"
#include "mwmpc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace mwmpc::cli {
namespace {

constexpr std::uint64_t kClfStream = 1;
constexpr std::uint64_t kEtaStream = 2;

SystemModel model_for(const ExperimentConfig& c) { return builtin_system(c.system, c.params, c.controller); }

double gamma_for(const SystemModel& m, const ExperimentConfig& c) { return c.certify.gamma.value_or(m.metadata.gamma); }
double rho_bar_for(const SystemModel& m, const ExperimentConfig& c) {
  return c.certify.rho_bar.value_or(m.metadata.rho_bar);
}

MpcConfig mpc_config(const ExperimentConfig& c, int exponent) {
  MpcConfig mc;
  mc.weight_spec = WeightSpec(c.horizon, exponent);
  mc.solver = c.solver;
  mc.steps = c.steps;
  mc.stop_level = c.stop_level;
  return mc;
}

std::filesystem::path artifact_path(const ExperimentConfig& c, const std::string& stem, const std::string& ext) {
  std::filesystem::create_directories(c.output_dir);
  return std::filesystem::path(c.output_dir) / (stem + "_" + c.tag + ext);
}

std::ofstream open_artifact(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

ExponentChoice choose_exponent(const SystemModel& model, const ExperimentConfig& c) {
  ExponentChoice out;
  out.reach = check_reachability(model, c.horizon, c.initial_state, c.certify.reach_tolerance, c.solver);
  out.eta = estimate_eta(model, c.horizon, c.certify.eta_state_samples, c.certify.eta_profile_samples,
                         splitmix64(c.seed ^ kEtaStream));
  out.eta_used = out.reach.feasible ? std::max(out.eta.value, out.reach.partial_sum) : out.eta.value;
  const double gamma = gamma_for(model, c);
  const double rho_bar = rho_bar_for(model, c);
  const int m_min = proof_constants(WeightSpec(c.horizon, 0), out.eta_used, gamma, rho_bar).m_min;
  out.exponent = c.exponent.value_or(m_min);
  out.constants = proof_constants(WeightSpec(c.horizon, out.exponent), out.eta_used, gamma, rho_bar);
  return out;
}

SimulationRecord run_simulate(const ExperimentConfig& c) {
  const SystemModel model = model_for(c);
  const int exponent = c.exponent ? *c.exponent : choose_exponent(model, c).exponent;
  return run_closed_loop(model, mpc_config(c, exponent), c.initial_state);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& c) {
  const SystemModel model = model_for(c);
  const ExponentChoice choice = choose_exponent(model, c);
  const double cst = static_cast<double>(c.horizon - 1) / c.horizon;

  std::vector<SweepRow> rows(static_cast<std::size_t>(c.m_last - c.m_first + 1));
  kernels::for_each_parallel(
      rows.size(),
      [&](std::size_t i) {
        const int m = c.m_first + static_cast<int>(i);
        const SimulationRecord rec = run_closed_loop(model, mpc_config(c, m), c.initial_state);
        SweepRow& row = rows[i];
        row.m = m;
        row.converged = rec.termination == Termination::kStopLevelReached;
        if (row.converged) row.steps_to_stop_level = static_cast<int>(rec.steps.size());
        row.final_stage_cost = rec.final_stage_cost;
        row.lemma1_bound = choice.eta_used * std::pow(cst, m);
        row.lemma1_measured = rec.steps.empty() ? 0.0 : rec.steps.front().terminal_stage_cost;
      },
      c.workers);
  return rows;
}

CertifyReport run_certify(const ExperimentConfig& c) {
  const SystemModel model = model_for(c);
  const ExponentChoice choice = choose_exponent(model, c);

  CertifyReport rep;
  rep.config = to_json(c);
  rep.eta = choice.eta;
  rep.eta_used = choice.eta_used;
  rep.constants = choice.constants;
  rep.exponent = choice.exponent;
  bool passed = true;

  if (c.certify.reachability) {
    rep.reachability = choice.reach;
    passed = passed && choice.reach.feasible;
  }
  if (c.certify.clf) {
    rep.clf = check_clf(model, rho_bar_for(model, c), gamma_for(model, c), c.certify.clf_samples,
                        splitmix64(c.seed ^ kClfStream));
    passed = passed && rep.clf->pass;
  }
  if (c.certify.lemma1) {
    rep.lemma1 = check_lemma1(model, c.initial_state, c.horizon, c.certify.lemma1_exponents, choice.eta.value,
                              c.solver, c.certify.reach_tolerance);
    passed = passed && rep.lemma1->pass;
  }
  if (c.certify.descent) {
    const SimulationRecord rec = run_closed_loop(model, mpc_config(c, choice.exponent), c.initial_state);
    rep.descent = check_descent(model, rec, choice.constants);
    rep.termination = to_string(rec.termination);
    rep.simulated_steps = static_cast<int>(rec.steps.size());
    passed = passed && rep.descent->pass;
  }
  rep.passed = passed;
  return rep;
}

std::vector<OracleRow> run_oracle_test(const ExperimentConfig& c) {
  const SystemModel model = model_for(c);
  std::vector<OracleRow> rows;
  SolverConfig grid_only = c.solver;
  grid_only.max_iterations = 0;
  const std::vector<Vector> grid = grid_profiles(c.horizon, c.oracle.levels);
  for (int m : c.oracle.exponents) {
    const WeightSpec spec(c.horizon, m);
    const auto w = weights(spec);
    for (const Vector& x0 : c.oracle.initial_states) {
      OracleRow row;
      row.m = m;
      row.x0 = x0;
      const SolveResult oracle = grid_oracle(model, spec, x0, c.oracle.levels);
      const SolveResult cont = solve(model, spec, x0, c.solver);
      const SolveResult from_grid = solve_from_starts(model, std::span<const double>(w), x0, grid_only, grid);
      row.oracle_cost = oracle.cost;
      row.solve_cost = cont.cost;
      row.grid_start_cost = from_grid.cost;
      row.dominance_ok = cont.cost <= oracle.cost + kIdentityTolerance;
      row.argmin_match = from_grid.profile == oracle.profile && from_grid.cost == oracle.cost;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

int run(const Request& request, std::ostream& log, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = load_config(request.config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  if (request.seed) {
    config.seed = *request.seed;
    config.solver.seed = *request.seed;
  }
  if (request.out_dir) config.output_dir = *request.out_dir;

  try {
    if (request.command == "simulate") {
      const SimulationRecord rec = run_simulate(config);
      const auto path = artifact_path(config, "steps", ".csv");
      auto out = open_artifact(path);
      write_steps_csv(out, rec);
      log << "simulate: " << rec.steps.size() << " steps, " << to_string(rec.termination) << ", final stage cost "
          << format_double(rec.final_stage_cost) << " -> " << path.string() << '\n';
      return kSuccess;
    }
    if (request.command == "sweep-m") {
      const auto rows = run_sweep(config);
      const auto path = artifact_path(config, "sweep", ".csv");
      auto out = open_artifact(path);
      write_sweep_csv(out, rows);
      log << "sweep-m: " << rows.size() << " exponents -> " << path.string() << '\n';
      return kSuccess;
    }
    if (request.command == "certify") {
      const CertifyReport rep = run_certify(config);
      const auto path = artifact_path(config, "certify", ".json");
      auto out = open_artifact(path);
      out << nlohmann::json(rep).dump(2) << '\n';
      log << "certify: exponent " << rep.exponent << " (m_min " << rep.constants.m_min << "), "
          << (rep.passed ? "all certificates passed" : "CERTIFICATE FAILED") << " -> " << path.string() << '\n';
      return rep.passed ? kSuccess : kCertificateFailed;
    }
    if (request.command == "oracle-test") {
      const auto rows = run_oracle_test(config);
      const auto path = artifact_path(config, "oracle", ".csv");
      auto out = open_artifact(path);
      write_oracle_csv(out, rows);
      const bool ok = std::all_of(rows.begin(), rows.end(),
                                  [](const OracleRow& r) { return r.dominance_ok && r.argmin_match; });
      log << "oracle-test: " << rows.size() << " instances, " << (ok ? "all match" : "MISMATCH") << " -> "
          << path.string() << '\n';
      return ok ? kSuccess : kCertificateFailed;
    }
    err << "unknown command '" << request.command << "' (valid: simulate, sweep-m, certify, oracle-test)\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace mwmpc::cli
