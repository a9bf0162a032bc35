#pragma once

#include "mwmpc/types.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>

namespace mwmpc {

/// Local control-Lyapunov data attached to a model, plus the sampling region
/// used as a stand-in for the reachable set X_N.
struct ModelMetadata {
  double gamma = 0.0;     // q(x) >= gamma * l(x)
  double rho_bar = 0.0;   // decrease holds on the level set l(x) <= rho_bar
  Box state_region;       // compact region standing in for X_N
  int default_horizon = 2;
  Vector demo_state;      // documented reachable initial state
  std::map<std::string, double> parameters;
  std::string description;
};

/// Discrete-time system x+ = f(x, u) with stage cost l, decrease function q and an
/// optional local controller. All callables must be pure; the model is shared
/// read-only between threads.
struct SystemModel {
  using StepFn = std::function<Vector(const Vector&, const Vector&)>;
  using ScalarFn = std::function<double(const Vector&)>;
  using ControllerFn = std::function<Vector(const Vector&)>;
  using LevelBoxFn = std::function<Box(double)>;

  std::string name;
  int state_dim = 0;
  int control_dim = 0;
  StepFn step;
  ScalarFn stage_cost;
  ScalarFn decrease_fn;
  ControllerFn local_controller;  // empty when the model has none
  Box control_box;
  LevelBoxFn sublevel_box;        // bounding box of {x : l(x) <= rho}
  ModelMetadata metadata;

  bool has_local_controller() const { return static_cast<bool>(local_controller); }
};

/// Throws DimensionError when x has the wrong size.
void check_state(const SystemModel& model, const Vector& x);

/// Throws DimensionError (naming the step) or std::invalid_argument when a control
/// leaves the box.
void validate_profile(const SystemModel& model, const ControlProfile& profile);

/// x_0 = x0, x_i = f(x_{i-1}, u_{i-1}). Controls are not clipped.
StateTrajectory rollout(const SystemModel& model, const Vector& x0, const ControlProfile& profile);

/// Applies the clipped local controller: returns (u+, f(x, u+)).
std::pair<Vector, Vector> local_step(const SystemModel& model, const Vector& x);

}  // namespace mwmpc
