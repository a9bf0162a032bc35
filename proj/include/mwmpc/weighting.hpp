#pragma once

#include "mwmpc/types.hpp"

#include <span>
#include <vector>

namespace mwmpc {

/// Horizon N >= 2 and integer exponent m >= 0 of the weight profile (i/N)^m.
struct WeightSpec {
  int horizon = 2;
  int exponent = 0;

  WeightSpec() = default;
  WeightSpec(int horizon, int exponent);  // throws std::invalid_argument

  /// (i/N)^m for 1 <= i <= N.
  double weight(int i) const;
  /// c = (N-1)/N
  double contraction() const;

  bool operator==(const WeightSpec&) const = default;
};

/// ((1/N)^m, ..., ((N-1)/N)^m, 1)
std::vector<double> weights(const WeightSpec& spec);

/// Weights (0, ..., 0, 1): the terminal stage cost alone.
std::vector<double> terminal_weights(int horizon);

/// sum_{i=1}^{N} w_i * stage_costs[i], summed in increasing i. stage_costs[0] is ignored.
double weighted_cost(std::span<const double> w, const StateTrajectory& traj);
double weighted_cost(const WeightSpec& spec, const StateTrajectory& traj);

struct ProofConstants {
  double c = 0.0;
  double psi_m = 0.0;  // 1 - c^m for the spec's exponent
  double eta = 0.0;
  double gamma = 0.0;
  double rho_bar = 0.0;
  int m_min = 0;

  bool operator==(const ProofConstants&) const = default;
};

/// True when eta*c^m <= rho_bar and c^m <= gamma/2.
bool exponent_is_stabilizing(int horizon, int m, double eta, double gamma, double rho_bar);

/// Smallest m satisfying exponent_is_stabilizing. Throws std::invalid_argument on
/// eta < 0, gamma <= 0 or rho_bar <= 0.
ProofConstants proof_constants(const WeightSpec& spec, double eta, double gamma, double rho_bar);

}  // namespace mwmpc
