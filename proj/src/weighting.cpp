#include "mwmpc/weighting.hpp"

#include "mwmpc/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mwmpc {

WeightSpec::WeightSpec(int n, int m) : horizon(n), exponent(m) {
  if (n < 2) throw std::invalid_argument("horizon must be at least 2, got " + std::to_string(n));
  if (m < 0) throw std::invalid_argument("exponent must be nonnegative, got " + std::to_string(m));
}

double WeightSpec::weight(int i) const {
  return std::pow(static_cast<double>(i) / horizon, exponent);
}

double WeightSpec::contraction() const {
  return static_cast<double>(horizon - 1) / horizon;
}

std::vector<double> weights(const WeightSpec& spec) {
  std::vector<double> w(spec.horizon);
  for (int i = 1; i <= spec.horizon; ++i) w[i - 1] = spec.weight(i);
  return w;
}

std::vector<double> terminal_weights(int horizon) {
  std::vector<double> w(horizon, 0.0);
  w.back() = 1.0;
  return w;
}

double weighted_cost(std::span<const double> w, const StateTrajectory& traj) {
  if (traj.stage_costs.size() != w.size() + 1) {
    throw DimensionError("trajectory stage costs", DimensionError::npos, w.size() + 1,
                         traj.stage_costs.size());
  }
  double total = 0.0;
  for (std::size_t i = 1; i <= w.size(); ++i) total += w[i - 1] * traj.stage_costs[i];
  return total;
}

double weighted_cost(const WeightSpec& spec, const StateTrajectory& traj) {
  const auto w = weights(spec);
  return weighted_cost(std::span<const double>(w), traj);
}

bool exponent_is_stabilizing(int horizon, int m, double eta, double gamma, double rho_bar) {
  const double cm = std::pow(static_cast<double>(horizon - 1) / horizon, m);
  return eta * cm <= rho_bar && cm <= gamma / 2.0;
}

ProofConstants proof_constants(const WeightSpec& spec, double eta, double gamma, double rho_bar) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be finite and >= 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(rho_bar > 0.0)) throw std::invalid_argument("rho_bar must be > 0");

  ProofConstants pc;
  pc.c = spec.contraction();
  pc.psi_m = 1.0 - std::pow(pc.c, spec.exponent);
  pc.eta = eta;
  pc.gamma = gamma;
  pc.rho_bar = rho_bar;

  // c^m reaches 0 in floating point, so the search always ends.
  int m = 0;
  while (!exponent_is_stabilizing(spec.horizon, m, eta, gamma, rho_bar)) ++m;
  pc.m_min = m;
  return pc;
}

}  // namespace mwmpc
