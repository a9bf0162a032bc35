#include "mwmpc/certificates.hpp"

#include "mwmpc/errors.hpp"
#include "mwmpc/kernels.hpp"
#include "mwmpc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mwmpc {
namespace {

constexpr int kMaxRejections = 1000000;

Vector uniform_in(const Box& box, std::mt19937_64& rng) {
  Vector v(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    v[i] = std::uniform_real_distribution<double>(box.lower[i], box.upper[i])(rng);
  }
  return v;
}

using MaxKernel = double (*)(std::size_t, const std::function<double(std::size_t)>&);

ClfCheck run_clf_check(const SystemModel& model, double rho_bar, double gamma, int sample_count,
                       std::uint64_t seed, MaxKernel max_over) {
  if (!model.has_local_controller()) {
    throw UnsupportedOperation("check_clf: model '" + model.name + "' has no local controller");
  }
  if (!(rho_bar > 0.0)) throw std::invalid_argument("check_clf: rho_bar must be > 0");
  if (sample_count < 0) throw std::invalid_argument("check_clf: sample_count must be >= 0");

  ClfCheck out;
  out.rho_bar = rho_bar;
  out.gamma = gamma;
  out.samples = sample_count;
  if (sample_count == 0) {
    out.worst_violation = -std::numeric_limits<double>::infinity();
    out.gamma_violation = -std::numeric_limits<double>::infinity();
    out.pass = true;
    return out;
  }

  // Rejection sampling stays serial so the sample set does not depend on threads.
  const Box bounds = model.sublevel_box(rho_bar);
  auto rng = stream_rng(seed, 0);
  std::vector<Vector> level_samples;
  level_samples.reserve(sample_count);
  int rejections = 0;
  while (static_cast<int>(level_samples.size()) < sample_count) {
    Vector x = uniform_in(bounds, rng);
    if (model.stage_cost(x) <= rho_bar) {
      level_samples.push_back(std::move(x));
    } else if (++rejections >= kMaxRejections) {
      throw Error("check_clf: rejection sampling of the level set rho_bar = " + std::to_string(rho_bar) +
                  " rejected 1e6 draws");
    }
  }
  auto region_rng = stream_rng(seed, 1);
  std::vector<Vector> region_samples;
  region_samples.reserve(sample_count);
  for (int i = 0; i < sample_count; ++i) region_samples.push_back(uniform_in(model.metadata.state_region, region_rng));

  out.worst_violation = max_over(level_samples.size(), [&](std::size_t i) {
    const Vector& x = level_samples[i];
    const Vector u = model.control_box.clamp(model.local_controller(x));
    return model.stage_cost(model.step(x, u)) - model.stage_cost(x) + model.decrease_fn(x);
  });
  auto gamma_gap = [&](const Vector& x) { return gamma * model.stage_cost(x) - model.decrease_fn(x); };
  const double on_level = max_over(level_samples.size(), [&](std::size_t i) { return gamma_gap(level_samples[i]); });
  const double on_region = max_over(region_samples.size(), [&](std::size_t i) { return gamma_gap(region_samples[i]); });
  out.gamma_violation = (std::isnan(on_level) || std::isnan(on_region)) ? std::numeric_limits<double>::quiet_NaN()
                                                                         : std::max(on_level, on_region);
  out.ran = true;
  out.pass = out.worst_violation <= kClfTolerance && out.gamma_violation <= kClfTolerance;
  return out;
}

EtaEstimate run_eta(const SystemModel& model, int horizon, int state_samples, int profile_samples,
                    std::uint64_t seed, MaxKernel max_over) {
  if (horizon < 2) throw std::invalid_argument("estimate_eta: horizon must be >= 2");
  if (state_samples < 0 || profile_samples < 0) throw std::invalid_argument("estimate_eta: negative sample count");
  EtaEstimate out;
  out.state_samples = state_samples;
  out.profile_samples = profile_samples;
  const std::size_t total = static_cast<std::size_t>(state_samples) * static_cast<std::size_t>(profile_samples);
  if (total == 0) return out;

  const Box control_profile_box(model.control_box.lower.replicate(horizon, 1),
                                model.control_box.upper.replicate(horizon, 1));
  const double best = max_over(total, [&](std::size_t idx) {
    const std::size_t s = idx / static_cast<std::size_t>(profile_samples);
    const std::size_t p = idx % static_cast<std::size_t>(profile_samples);
    auto state_rng = stream_rng(seed, 2 * s);
    auto profile_rng = stream_rng(seed, 2 * p + 1);
    const Vector x = uniform_in(model.metadata.state_region, state_rng);
    const Vector flat = uniform_in(control_profile_box, profile_rng);
    const StateTrajectory traj = rollout(model, x, ControlProfile::from_flat(flat, model.control_dim));
    double sum = 0.0;
    for (int i = 1; i <= horizon - 1; ++i) sum += traj.stage_costs[i];
    return sum;
  });
  out.value = std::max(0.0, best);
  return out;
}

}  // namespace

ReachabilityCheck check_reachability(const SystemModel& model, int horizon, const Vector& x,
                                     double tolerance, const SolverConfig& config) {
  check_state(model, x);
  if (horizon < 1) throw std::invalid_argument("check_reachability: horizon must be >= 1");
  ReachabilityCheck out;
  out.state = x;
  out.horizon = horizon;
  out.tolerance = tolerance;
  const auto w = terminal_weights(horizon);
  try {
    const SolveResult r = solve_weighted(model, std::span<const double>(w), x, config);
    const StateTrajectory traj = rollout(model, x, r.profile);
    out.profile = r.profile;
    out.residual = traj.stage_costs.back();
    for (int i = 1; i <= horizon - 1; ++i) out.partial_sum += traj.stage_costs[i];
    out.feasible = out.residual <= tolerance;
  } catch (const SolverFailure& e) {
    out.residual = std::numeric_limits<double>::infinity();
    out.feasible = false;
    out.diagnostic = e.what();
  }
  return out;
}

ClfCheck check_clf(const SystemModel& model, double rho_bar, double gamma, int sample_count, std::uint64_t seed) {
  return run_clf_check(model, rho_bar, gamma, sample_count, seed, &kernels::max_over_parallel);
}

ClfCheck check_clf_serial(const SystemModel& model, double rho_bar, double gamma, int sample_count,
                          std::uint64_t seed) {
  return run_clf_check(model, rho_bar, gamma, sample_count, seed, &kernels::max_over_serial);
}

EtaEstimate estimate_eta(const SystemModel& model, int horizon, int state_samples, int profile_samples,
                         std::uint64_t seed) {
  return run_eta(model, horizon, state_samples, profile_samples, seed, &kernels::max_over_parallel);
}

EtaEstimate estimate_eta_serial(const SystemModel& model, int horizon, int state_samples,
                                int profile_samples, std::uint64_t seed) {
  return run_eta(model, horizon, state_samples, profile_samples, seed, &kernels::max_over_serial);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares_slope: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares_slope: x values are all equal");
  return sxy / sxx;
}

Lemma1Report check_lemma1(const SystemModel& model, const Vector& x, int horizon,
                          const std::vector<int>& exponents, double eta_estimate,
                          const SolverConfig& config, double reach_tolerance) {
  Lemma1Report out;
  out.eta_estimate = eta_estimate;
  out.c = static_cast<double>(horizon - 1) / horizon;
  out.log_c = std::log(out.c);

  const ReachabilityCheck reach = check_reachability(model, horizon, x, reach_tolerance, config);
  if (!reach.feasible) return out;
  out.applicable = true;
  out.eta_runtime = reach.partial_sum;
  out.eta_used = std::max(eta_estimate, reach.partial_sum);

  out.entries.resize(exponents.size());
  kernels::for_each_parallel(exponents.size(), [&](std::size_t i) {
    const WeightSpec spec(horizon, exponents[i]);
    const SolveResult r = solve(model, spec, x, config, reach.profile);
    Lemma1Entry& e = out.entries[i];
    e.m = exponents[i];
    e.measured = rollout(model, x, r.profile).stage_costs.back();
    e.bound = out.eta_used * std::pow(out.c, e.m);
    e.holds = e.measured <= e.bound + kIdentityTolerance;
    e.converged = r.converged;
  });

  std::vector<double> ms;
  std::vector<double> logs;
  for (const auto& e : out.entries) {
    if (e.measured > 0.0) {
      ms.push_back(e.m);
      logs.push_back(std::log(e.measured));
    }
  }
  if (ms.size() >= 2 && std::adjacent_find(ms.begin(), ms.end(), std::not_equal_to<>()) != ms.end()) {
    out.fitted_slope = least_squares_slope(ms, logs);
  }
  out.pass = std::all_of(out.entries.begin(), out.entries.end(), [](const Lemma1Entry& e) { return e.holds; });
  return out;
}

DescentReport check_descent(const SystemModel& /*model*/, const SimulationRecord& record,
                            const ProofConstants& constants, double tolerance) {
  DescentReport out;
  out.tolerance = tolerance;
  const int n = record.config.weight_spec.horizon;
  const int m = record.config.weight_spec.exponent;
  const double first_weight = std::pow(1.0 / n, m);
  const std::size_t count = record.steps.size();

  bool optimality = true;
  bool descent = true;
  bool decreasing = true;
  for (std::size_t k = 0; k < count; ++k) {
    const StepRecord& s = record.steps[k];
    DescentEntry e;
    e.k = s.k;
    e.lhs = (k + 1 < count) ? std::optional<double>(record.steps[k + 1].optimal_cost) : record.final_optimal_cost;
    e.candidate = s.candidate_cost;
    e.rhs = s.optimal_cost - first_weight * s.first_stage_cost - 0.5 * constants.gamma * s.terminal_stage_cost;
    if (!e.lhs || !e.candidate) {
      e.skipped = true;
      out.complete = false;
    } else {
      e.optimality_ok = *e.lhs <= *e.candidate + tolerance;
      e.descent_ok = *e.candidate <= e.rhs + tolerance;
      optimality = optimality && e.optimality_ok;
      descent = descent && e.descent_ok;
      if (s.optimal_cost > 0.0 && s.stage_cost > record.config.stop_level && !(*e.lhs < s.optimal_cost)) {
        decreasing = false;
      }
    }
    out.entries.push_back(e);
  }

  const double initial_cost = count > 0 ? record.steps.front().optimal_cost : record.final_optimal_cost.value_or(0.0);
  for (std::size_t k = 0; k < count; ++k) {
    out.telescoped_stage_sum += (k + 1 < count) ? record.steps[k + 1].stage_cost : record.final_stage_cost;
  }
  out.telescoped_bound = std::pow(static_cast<double>(n), m) * initial_cost + tolerance * static_cast<double>(count);
  out.telescoping_ok = out.telescoped_stage_sum <= out.telescoped_bound;

  out.optimality_pass = optimality;
  out.descent_pass = descent;
  out.strictly_decreasing = decreasing;
  out.pass = out.complete && optimality && descent && out.telescoping_ok;
  return out;
}

}  // namespace mwmpc
