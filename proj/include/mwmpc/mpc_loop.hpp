#pragma once

#include "mwmpc/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mwmpc {

struct MpcConfig {
  WeightSpec weight_spec;
  SolverConfig solver;
  int steps = 50;
  double stop_level = 1e-10;  // stop once l(x_k) <= stop_level

  bool operator==(const MpcConfig&) const = default;
};

struct StepRecord {
  int k = 0;
  Vector state;                   // x_k
  Vector applied_control;         // u*_0(x_k)
  double optimal_cost = 0.0;      // J*_m(x_k)
  double stage_cost = 0.0;        // l(x_k)
  double first_stage_cost = 0.0;  // l*_1(x_k)
  double terminal_stage_cost = 0.0;  // l*_N(x_k)
  std::optional<double> candidate_cost;  // J_m(u~ | x_{k+1})
  bool solver_converged = false;
  bool terminal_control_fallback = false;  // inner u-bar problem failed, u-bar = 0
};

enum class Termination { kStepsExhausted, kStopLevelReached, kSolverFailure };

std::string to_string(Termination t);
Termination parse_termination(const std::string& s);

struct SimulationRecord {
  MpcConfig config;
  std::vector<StepRecord> steps;
  Vector final_state;
  double final_stage_cost = 0.0;
  std::optional<double> final_optimal_cost;  // J*_m at final_state, warm-started
  Termination termination = Termination::kStepsExhausted;
  std::string failure_message;
};

struct ShiftedCandidate {
  ControlProfile profile;  // (u*_1, ..., u*_{N-1}, u-bar)
  Vector terminal_control; // u-bar
  bool fallback = false;   // inner problem failed and u-bar was set to 0
};

/// Builds u~ from a solution at prev_x: drops u*_0 and appends
/// u-bar = argmin_{u in box} l(f(x_N^{u*}(prev_x), u)). The inner problem is solved
/// by multi-start projected gradient seeded with the clipped local controller.
ShiftedCandidate shifted_candidate(const SystemModel& model, const SolveResult& prev_result,
                                   const Vector& prev_x, const SolverConfig& config);

/// Receding-horizon loop x_{k+1} = f(x_k, u*_0(x_k)), warm-starting each solve with the
/// shifted candidate of the previous one.
SimulationRecord run_closed_loop(const SystemModel& model, const MpcConfig& config, const Vector& x0);

}  // namespace mwmpc
