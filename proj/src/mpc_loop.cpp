#include "mwmpc/mpc_loop.hpp"

#include "mwmpc/errors.hpp"
#include "mwmpc/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace mwmpc {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kStepsExhausted: return "steps_exhausted";
    case Termination::kStopLevelReached: return "stop_level_reached";
    case Termination::kSolverFailure: return "solver_failure";
  }
  return "steps_exhausted";
}

Termination parse_termination(const std::string& s) {
  if (s == "steps_exhausted") return Termination::kStepsExhausted;
  if (s == "stop_level_reached") return Termination::kStopLevelReached;
  if (s == "solver_failure") return Termination::kSolverFailure;
  throw std::invalid_argument("unknown termination reason '" + s + "'");
}

ShiftedCandidate shifted_candidate(const SystemModel& model, const SolveResult& prev_result,
                                   const Vector& prev_x, const SolverConfig& config) {
  const StateTrajectory traj = rollout(model, prev_x, prev_result.profile);
  const Vector x_terminal = traj.states.back();
  const Box& box = model.control_box;

  BoxProblem inner;
  inner.lower = box.lower;
  inner.upper = box.upper;
  inner.objective = [&model, x_terminal](const Vector& u) {
    return model.stage_cost(model.step(x_terminal, u));
  };

  std::vector<Vector> starts;
  if (model.has_local_controller()) starts.push_back(box.clamp(model.local_controller(x_terminal)));
  starts.push_back(box.clamp(Vector::Zero(model.control_dim)));
  for (std::uint64_t s = 0; static_cast<int>(starts.size()) < std::max(config.num_starts, 2); ++s) {
    auto rng = stream_rng(config.seed ^ 0x5bd1e995ULL, s);
    Vector u(model.control_dim);
    for (int c = 0; c < model.control_dim; ++c) {
      u[c] = std::uniform_real_distribution<double>(box.lower[c], box.upper[c])(rng);
    }
    starts.push_back(std::move(u));
  }

  ShiftedCandidate out;
  try {
    out.terminal_control = minimize_multistart(inner, starts, config).best.point;
  } catch (const SolverFailure&) {
    out.terminal_control = box.clamp(Vector::Zero(model.control_dim));
    out.fallback = true;
  }
  out.profile.controls.assign(prev_result.profile.controls.begin() + 1, prev_result.profile.controls.end());
  out.profile.controls.push_back(out.terminal_control);
  return out;
}

SimulationRecord run_closed_loop(const SystemModel& model, const MpcConfig& config, const Vector& x0) {
  check_state(model, x0);
  const WeightSpec spec(config.weight_spec.horizon, config.weight_spec.exponent);
  if (config.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(config.stop_level >= 0.0)) throw std::invalid_argument("stop_level must be >= 0");
  config.solver.validate();

  SimulationRecord rec;
  rec.config = config;
  Vector x = x0;
  std::optional<ControlProfile> warm;
  bool stopped = false;

  for (int k = 0; k < config.steps; ++k) {
    const double stage = model.stage_cost(x);
    if (stage <= config.stop_level) {
      rec.termination = Termination::kStopLevelReached;
      stopped = true;
      break;
    }
    SolverConfig solver = config.solver;
    solver.seed = splitmix64(config.solver.seed + static_cast<std::uint64_t>(k));

    SolveResult result;
    try {
      result = solve(model, spec, x, solver, warm);
    } catch (const SolverFailure& e) {
      rec.termination = Termination::kSolverFailure;
      rec.failure_message = "step " + std::to_string(k) + ": " + e.what();
      stopped = true;
      break;
    }
    const StateTrajectory traj = rollout(model, x, result.profile);
    Vector next = model.step(x, result.profile.controls.front());
    ShiftedCandidate candidate = shifted_candidate(model, result, x, solver);

    StepRecord step;
    step.k = k;
    step.state = x;
    step.applied_control = result.profile.controls.front();
    step.optimal_cost = result.cost;
    step.stage_cost = stage;
    step.first_stage_cost = traj.stage_costs[1];
    step.terminal_stage_cost = traj.stage_costs.back();
    step.candidate_cost = weighted_cost(spec, rollout(model, next, candidate.profile));
    step.solver_converged = result.converged;
    step.terminal_control_fallback = candidate.fallback;
    rec.steps.push_back(std::move(step));

    warm = std::move(candidate.profile);
    x = std::move(next);
  }

  if (!stopped && model.stage_cost(x) <= config.stop_level) rec.termination = Termination::kStopLevelReached;
  rec.final_state = x;
  rec.final_stage_cost = model.stage_cost(x);
  if (rec.termination != Termination::kSolverFailure) {
    SolverConfig solver = config.solver;
    solver.seed = splitmix64(config.solver.seed + static_cast<std::uint64_t>(rec.steps.size()));
    try {
      rec.final_optimal_cost = solve(model, spec, x, solver, warm).cost;
    } catch (const SolverFailure&) {
      rec.final_optimal_cost.reset();
    }
  }
  return rec;
}

}  // namespace mwmpc
