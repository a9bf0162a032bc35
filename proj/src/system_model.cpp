#include "mwmpc/system_model.hpp"

#include "mwmpc/errors.hpp"

#include <stdexcept>
#include <string>

namespace mwmpc {

void check_state(const SystemModel& model, const Vector& x) {
  if (x.size() != model.state_dim) {
    throw DimensionError("state", DimensionError::npos, model.state_dim, x.size());
  }
}

static void check_control_dims(const SystemModel& model, const ControlProfile& profile) {
  for (std::size_t i = 0; i < profile.controls.size(); ++i) {
    if (profile.controls[i].size() != model.control_dim) {
      throw DimensionError("control", i, model.control_dim, profile.controls[i].size());
    }
  }
}

void validate_profile(const SystemModel& model, const ControlProfile& profile) {
  check_control_dims(model, profile);
  for (std::size_t i = 0; i < profile.controls.size(); ++i) {
    if (!model.control_box.contains(profile.controls[i])) {
      throw std::invalid_argument("control " + std::to_string(i) + " lies outside the control box");
    }
  }
}

StateTrajectory rollout(const SystemModel& model, const Vector& x0, const ControlProfile& profile) {
  check_state(model, x0);
  check_control_dims(model, profile);

  StateTrajectory traj;
  const std::size_t n = profile.controls.size();
  traj.states.reserve(n + 1);
  traj.stage_costs.reserve(n + 1);
  traj.states.push_back(x0);
  traj.stage_costs.push_back(model.stage_cost(x0));
  for (std::size_t i = 0; i < n; ++i) {
    traj.states.push_back(model.step(traj.states.back(), profile.controls[i]));
    traj.stage_costs.push_back(model.stage_cost(traj.states.back()));
  }
  return traj;
}

std::pair<Vector, Vector> local_step(const SystemModel& model, const Vector& x) {
  if (!model.has_local_controller()) {
    throw UnsupportedOperation("model '" + model.name + "' has no local controller");
  }
  check_state(model, x);
  Vector u = model.control_box.clamp(model.local_controller(x));
  Vector next = model.step(x, u);
  return {std::move(u), std::move(next)};
}

}  // namespace mwmpc
