#pragma once

#include "mwmpc/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mwmpc {

struct SolverConfig {
  int max_iterations = 2000;        // 0 evaluates the starts only
  double gradient_tolerance = 1e-8; // on the inf-norm of the projected gradient step
  double step_init = 1.0;
  int num_starts = 4;
  double fd_epsilon = 1e-6;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument naming the bad field.
  void validate() const;

  bool operator==(const SolverConfig&) const = default;
};

/// min objective(z) s.t. lower <= z <= upper
struct BoxProblem {
  std::function<double(const Vector&)> objective;
  Vector lower;
  Vector upper;

  int dim() const { return static_cast<int>(lower.size()); }
  Vector clamp(const Vector& z) const;
};

struct DescentResult {
  Vector point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct MultiStartResult {
  DescentResult best;
  int starts_used = 0;
  int starts_failed = 0;
  std::vector<std::string> diagnostics;
};

/// Central differences (f(z + h e_j) - f(z - h e_j)) / 2h, evaluated without clamping.
/// Throws NonFiniteCost naming j.
Vector central_difference_gradient(const std::function<double(const Vector&)>& objective,
                                   const Vector& z, double h);

/// Projected gradient descent with backtracking (halving, Armijo constant 1e-4, at
/// most 60 halvings per iteration). The start is clamped into the box first.
/// Never increases the objective. Throws NonFiniteCost if the start or a gradient
/// is not finite.
DescentResult projected_gradient(const BoxProblem& problem, const Vector& start,
                                 const SolverConfig& config);

/// Runs projected_gradient from every start (in parallel) and keeps the best by
/// (value, lexicographic point). Failing starts are dropped with a diagnostic;
/// throws SolverFailure when all fail.
MultiStartResult minimize_multistart(const BoxProblem& problem, const std::vector<Vector>& starts,
                                     const SolverConfig& config);

}  // namespace mwmpc
