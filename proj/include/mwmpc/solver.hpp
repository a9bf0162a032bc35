#pragma once

#include "mwmpc/optimizer.hpp"
#include "mwmpc/system_model.hpp"
#include "mwmpc/weighting.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mwmpc {

struct SolveResult {
  ControlProfile profile;  // u*(x0, m)
  double cost = 0.0;       // J*_m(x0), re-evaluated on the rollout of `profile`
  int iterations = 0;
  bool converged = false;
  int starts_used = 0;
  int starts_failed = 0;
  std::vector<std::string> diagnostics;
};

/// J(u | x0) = weighted_cost(w, rollout(model, x0, u)) for a flat profile.
double profile_cost(const SystemModel& model, std::span<const double> w, const Vector& x0,
                    const Vector& flat_profile);

/// Central finite-difference gradient of J_m with respect to the flat profile.
Vector gradient(const SystemModel& model, const WeightSpec& spec, const Vector& x0,
                const ControlProfile& profile, double fd_epsilon);

/// Start list: warm start (if any), the zero profile, then uniform random profiles
/// drawn from `config.seed` until config.num_starts profiles exist.
std::vector<Vector> default_starts(const SystemModel& model, int horizon, const SolverConfig& config,
                                   const std::optional<ControlProfile>& warm_start);

/// Minimizes sum_i w_i l(x_i) over the product box from the given starts.
SolveResult solve_from_starts(const SystemModel& model, std::span<const double> w,
                              const Vector& x0, const SolverConfig& config,
                              const std::vector<Vector>& starts);

/// Minimizes J_m(u | x0) (problem P_m(x0)). The warm start, when given, is one of
/// the starts, so the returned cost never exceeds J_m(warm_start | x0).
SolveResult solve(const SystemModel& model, const WeightSpec& spec, const Vector& x0,
                  const SolverConfig& config,
                  const std::optional<ControlProfile>& warm_start = std::nullopt);

/// Same as solve with an arbitrary weight vector of length N.
SolveResult solve_weighted(const SystemModel& model, std::span<const double> w, const Vector& x0,
                           const SolverConfig& config,
                           const std::optional<ControlProfile>& warm_start = std::nullopt);

inline constexpr double kGridBudget = 1e7;

/// Exhaustive minimization of J_m over profiles whose every control component c
/// takes values in levels[c]. Ties go to the lexicographically smallest profile.
/// Throws std::length_error (message carries the count) when the grid exceeds
/// kGridBudget points.
SolveResult grid_oracle(const SystemModel& model, const WeightSpec& spec, const Vector& x0,
                        const std::vector<std::vector<double>>& levels);

/// All grid profiles in enumeration order (for small grids).
std::vector<Vector> grid_profiles(int horizon, const std::vector<std::vector<double>>& levels);

}  // namespace mwmpc
