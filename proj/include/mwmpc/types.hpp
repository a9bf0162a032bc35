#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace mwmpc {

using Vector = Eigen::VectorXd;

/// Axis-aligned box [lower, upper].
struct Box {
  Vector lower;
  Vector upper;

  Box() = default;
  Box(Vector lo, Vector hi);
  static Box uniform(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Vector& v) const;
  Vector clamp(const Vector& v) const;
};

/// Controls (u_0, ..., u_{N-1}) over the prediction horizon.
struct ControlProfile {
  std::vector<Vector> controls;

  int horizon() const { return static_cast<int>(controls.size()); }
  int control_dim() const { return controls.empty() ? 0 : static_cast<int>(controls.front().size()); }

  /// Step-major flattening: u_0 components first.
  Vector flatten() const;
  static ControlProfile from_flat(const Vector& flat, int control_dim);
  static ControlProfile zeros(int horizon, int control_dim);

  bool operator==(const ControlProfile& other) const;
};

/// Rollout of a profile: N+1 states and their stage costs (index 0 is the initial state).
struct StateTrajectory {
  std::vector<Vector> states;
  std::vector<double> stage_costs;

  int horizon() const { return static_cast<int>(states.size()) - 1; }
};

/// Lexicographic order on vectors of equal length.
bool lexicographic_less(const Vector& a, const Vector& b);

}  // namespace mwmpc
