#include "mwmpc/solver.hpp"

#include "mwmpc/errors.hpp"
#include "mwmpc/kernels.hpp"
#include "mwmpc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mwmpc {
namespace {

BoxProblem profile_problem(const SystemModel& model, std::span<const double> w, const Vector& x0) {
  const int n = static_cast<int>(w.size());
  BoxProblem p;
  p.lower = model.control_box.lower.replicate(n, 1);
  p.upper = model.control_box.upper.replicate(n, 1);
  p.objective = [&model, w, x0](const Vector& flat) { return profile_cost(model, w, x0, flat); };
  return p;
}

}  // namespace

double profile_cost(const SystemModel& model, std::span<const double> w, const Vector& x0,
                    const Vector& flat_profile) {
  const auto expected = static_cast<Eigen::Index>(w.size()) * model.control_dim;
  if (flat_profile.size() != expected) {
    throw DimensionError("flat profile", DimensionError::npos, expected, flat_profile.size());
  }
  return weighted_cost(w, rollout(model, x0, ControlProfile::from_flat(flat_profile, model.control_dim)));
}

Vector gradient(const SystemModel& model, const WeightSpec& spec, const Vector& x0,
                const ControlProfile& profile, double fd_epsilon) {
  check_state(model, x0);
  if (profile.horizon() != spec.horizon) {
    throw DimensionError("profile horizon", DimensionError::npos, spec.horizon, profile.horizon());
  }
  validate_profile(model, profile);
  const auto w = weights(spec);
  const std::span<const double> ws(w);
  return central_difference_gradient(
      [&](const Vector& flat) { return profile_cost(model, ws, x0, flat); }, profile.flatten(), fd_epsilon);
}

std::vector<Vector> default_starts(const SystemModel& model, int horizon, const SolverConfig& config,
                                   const std::optional<ControlProfile>& warm_start) {
  std::vector<Vector> starts;
  if (warm_start) {
    if (warm_start->horizon() != horizon) {
      throw DimensionError("warm start horizon", DimensionError::npos, horizon, warm_start->horizon());
    }
    validate_profile(model, *warm_start);
    starts.push_back(warm_start->flatten());
  }
  const Box& box = model.control_box;
  if (static_cast<int>(starts.size()) < config.num_starts) {
    starts.push_back(box.clamp(Vector::Zero(model.control_dim)).replicate(horizon, 1));
  }
  for (std::uint64_t s = 0; static_cast<int>(starts.size()) < config.num_starts; ++s) {
    auto rng = stream_rng(config.seed, s);
    Vector z(static_cast<Eigen::Index>(horizon) * model.control_dim);
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      const Eigen::Index c = j % model.control_dim;
      std::uniform_real_distribution<double> dist(box.lower[c], box.upper[c]);
      z[j] = dist(rng);
    }
    starts.push_back(std::move(z));
  }
  return starts;
}

SolveResult solve_from_starts(const SystemModel& model, std::span<const double> w, const Vector& x0,
                              const SolverConfig& config, const std::vector<Vector>& starts) {
  check_state(model, x0);
  if (starts.empty()) throw std::invalid_argument("solve: at least one start is required");
  const BoxProblem problem = profile_problem(model, w, x0);
  MultiStartResult ms = minimize_multistart(problem, starts, config);

  SolveResult r;
  r.profile = ControlProfile::from_flat(ms.best.point, model.control_dim);
  r.cost = profile_cost(model, w, x0, ms.best.point);
  r.iterations = ms.best.iterations;
  r.converged = ms.best.converged;
  r.starts_used = ms.starts_used;
  r.starts_failed = ms.starts_failed;
  r.diagnostics = std::move(ms.diagnostics);
  return r;
}

SolveResult solve_weighted(const SystemModel& model, std::span<const double> w, const Vector& x0,
                           const SolverConfig& config, const std::optional<ControlProfile>& warm_start) {
  config.validate();
  check_state(model, x0);
  return solve_from_starts(model, w, x0, config,
                           default_starts(model, static_cast<int>(w.size()), config, warm_start));
}

SolveResult solve(const SystemModel& model, const WeightSpec& spec, const Vector& x0,
                  const SolverConfig& config, const std::optional<ControlProfile>& warm_start) {
  const auto w = weights(spec);
  return solve_weighted(model, std::span<const double>(w), x0, config, warm_start);
}

namespace {
kernels::Grid profile_grid(int horizon, const std::vector<std::vector<double>>& levels) {
  kernels::Grid grid;
  for (int i = 0; i < horizon; ++i) {
    for (const auto& axis : levels) grid.axes.push_back(axis);
  }
  return grid;
}
}  // namespace

std::vector<Vector> grid_profiles(int horizon, const std::vector<std::vector<double>>& levels) {
  const kernels::Grid grid = profile_grid(horizon, levels);
  const std::uint64_t n = grid.size();
  if (static_cast<double>(n) > kGridBudget) {
    throw std::length_error("grid has " + std::to_string(n) + " profiles, budget is 1e7");
  }
  std::vector<Vector> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(grid.point(i));
  return out;
}

SolveResult grid_oracle(const SystemModel& model, const WeightSpec& spec, const Vector& x0,
                        const std::vector<std::vector<double>>& levels) {
  check_state(model, x0);
  if (static_cast<int>(levels.size()) != model.control_dim) {
    throw DimensionError("grid levels", DimensionError::npos, model.control_dim, levels.size());
  }
  for (std::size_t c = 0; c < levels.size(); ++c) {
    if (levels[c].empty()) throw std::invalid_argument("grid levels for component " + std::to_string(c) + " are empty");
  }
  const kernels::Grid grid = profile_grid(spec.horizon, levels);
  // count = (prod_c |levels_c|)^N, computed in floating point so it cannot wrap
  double count = 1.0;
  for (const auto& axis : grid.axes) count *= static_cast<double>(axis.size());
  if (count > kGridBudget) {
    throw std::length_error("grid oracle enumeration count " + std::to_string(count) +
                            " exceeds the budget of 1e7");
  }
  const auto w = weights(spec);
  const std::span<const double> ws(w);
  const kernels::Candidate best = kernels::grid_argmin_parallel(
      grid, [&](const Vector& flat) { return profile_cost(model, ws, x0, flat); });
  if (!best.found()) throw SolverFailure("grid oracle: every grid profile has a non-finite cost");

  SolveResult r;
  r.profile = ControlProfile::from_flat(best.point, model.control_dim);
  r.cost = best.cost;
  r.converged = true;
  r.starts_used = static_cast<int>(grid.size());
  return r;
}

}  // namespace mwmpc
