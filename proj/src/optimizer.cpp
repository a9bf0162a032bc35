#include "mwmpc/optimizer.hpp"

#include "mwmpc/errors.hpp"
#include "mwmpc/kernels.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace mwmpc {
namespace {
constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;
}  // namespace

void SolverConfig::validate() const {
  if (max_iterations < 0) throw std::invalid_argument("solver.max_iterations must be >= 0");
  if (!(gradient_tolerance > 0.0)) throw std::invalid_argument("solver.gradient_tolerance must be > 0");
  if (!(step_init > 0.0)) throw std::invalid_argument("solver.step_init must be > 0");
  if (num_starts < 1) throw std::invalid_argument("solver.num_starts must be >= 1");
  if (!(fd_epsilon > 0.0)) throw std::invalid_argument("solver.fd_epsilon must be > 0");
}

Vector BoxProblem::clamp(const Vector& z) const {
  return z.cwiseMax(lower).cwiseMin(upper);
}

Vector central_difference_gradient(const std::function<double(const Vector&)>& objective,
                                   const Vector& z, double h) {
  Vector g(z.size());
  Vector probe = z;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    probe[j] = z[j] + h;
    const double up = objective(probe);
    probe[j] = z[j] - h;
    const double down = objective(probe);
    probe[j] = z[j];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw NonFiniteCost("non-finite cost when perturbing component " + std::to_string(j),
                          static_cast<std::size_t>(j));
    }
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

DescentResult projected_gradient(const BoxProblem& problem, const Vector& start,
                                 const SolverConfig& config) {
  if (start.size() != problem.dim()) {
    throw DimensionError("start point", DimensionError::npos, problem.dim(), start.size());
  }
  DescentResult r;
  r.point = problem.clamp(start);
  r.value = problem.objective(r.point);
  if (!std::isfinite(r.value)) throw NonFiniteCost("non-finite cost at the start point", NonFiniteCost::npos);
  if (config.max_iterations == 0) return r;

  for (;;) {
    const Vector g = central_difference_gradient(problem.objective, r.point, config.fd_epsilon);
    const Vector projected_step = problem.clamp(r.point - g) - r.point;
    if (projected_step.lpNorm<Eigen::Infinity>() <= config.gradient_tolerance) {
      r.converged = true;
      break;
    }
    if (r.iterations >= config.max_iterations) break;

    double t = config.step_init;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, t *= 0.5) {
      Vector trial = problem.clamp(r.point - t * g);
      const double value = problem.objective(trial);
      if (std::isfinite(value) && value <= r.value + kArmijo * g.dot(trial - r.point)) {
        r.point = std::move(trial);
        r.value = value;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // stalled at the resolution of the finite differences
    ++r.iterations;
  }
  return r;
}

MultiStartResult minimize_multistart(const BoxProblem& problem, const std::vector<Vector>& starts,
                                     const SolverConfig& config) {
  config.validate();
  std::vector<std::optional<DescentResult>> runs(starts.size());
  std::vector<std::string> errors(starts.size());
  kernels::for_each_parallel(starts.size(), [&](std::size_t i) {
    try {
      runs[i] = projected_gradient(problem, starts[i], config);
    } catch (const SolverFailure& e) {
      errors[i] = e.what();
    }
  });

  MultiStartResult out;
  out.starts_used = static_cast<int>(starts.size());
  kernels::Candidate best;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i]) {
      ++out.starts_failed;
      out.diagnostics.push_back("start " + std::to_string(i) + " abandoned: " + errors[i]);
      continue;
    }
    kernels::Candidate c{runs[i]->value, runs[i]->point};
    if (kernels::better(c, best)) {
      best = std::move(c);
      best_index = i;
    }
  }
  if (!best.found()) {
    throw SolverFailure("all " + std::to_string(starts.size()) + " starts failed" +
                        (out.diagnostics.empty() ? std::string() : ": " + out.diagnostics.front()));
  }
  out.best = *runs[best_index];
  return out;
}

}  // namespace mwmpc
