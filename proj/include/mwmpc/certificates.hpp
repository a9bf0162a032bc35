#pragma once

#include "mwmpc/mpc_loop.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mwmpc {

inline constexpr double kInequalityTolerance = 1e-8;
inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kClfTolerance = 1e-10;

struct ReachabilityCheck {
  Vector state;
  int horizon = 0;
  double residual = 0.0;  // l(x_N) under the best terminal-targeting profile
  double tolerance = 1e-8;
  bool feasible = false;
  ControlProfile profile;
  double partial_sum = 0.0;  // sum_{i=1}^{N-1} l(x_i) along `profile`
  std::string diagnostic;
};

/// Minimizes l(x_N^u(x)) alone over the box; feasible when the residual <= tolerance.
ReachabilityCheck check_reachability(const SystemModel& model, int horizon, const Vector& x,
                                     double tolerance, const SolverConfig& config);

struct ClfCheck {
  double rho_bar = 0.0;
  double gamma = 0.0;
  int samples = 0;
  bool ran = false;
  double worst_violation = 0.0;  // max l(f(x,u+)) - l(x) + q(x) on B_l(rho_bar)
  double gamma_violation = 0.0;  // max gamma l(x) - q(x)
  bool pass = false;
};

/// Rejection-samples B_l(rho_bar) from model.sublevel_box(rho_bar) and checks the local
/// decrease with u+ = clipped kappa(x), and q >= gamma l on the same samples plus the
/// model's state region. Throws UnsupportedOperation without a local controller and
/// Error if 10^6 draws are rejected.
ClfCheck check_clf(const SystemModel& model, double rho_bar, double gamma, int sample_count,
                   std::uint64_t seed);
ClfCheck check_clf_serial(const SystemModel& model, double rho_bar, double gamma,
                          int sample_count, std::uint64_t seed);

struct EtaEstimate {
  double value = 0.0;  // sampled lower estimate of the supremum
  int state_samples = 0;
  int profile_samples = 0;
};

/// max over sampled (x, u) in state_region x box^N of sum_{i=1}^{N-1} l(x_i^u(x)).
/// Sample (s, p) depends only on (seed, s, p), so the estimate is nondecreasing in
/// both counts.
EtaEstimate estimate_eta(const SystemModel& model, int horizon, int state_samples,
                         int profile_samples, std::uint64_t seed);
EtaEstimate estimate_eta_serial(const SystemModel& model, int horizon, int state_samples,
                                int profile_samples, std::uint64_t seed);

struct Lemma1Entry {
  int m = 0;
  double measured = 0.0;  // l*_N
  double bound = 0.0;     // eta * c^m
  bool holds = false;
  bool converged = false;
};

struct Lemma1Report {
  bool applicable = false;
  double eta_estimate = 0.0;
  double eta_runtime = 0.0;
  double eta_used = 0.0;
  double c = 0.0;
  std::vector<Lemma1Entry> entries;
  std::optional<double> fitted_slope;  // least squares slope of log l*_N against m
  double log_c = 0.0;
  bool pass = false;
};

/// Solves P_m(x) for each m (warm-started with the reachability profile) and compares
/// l*_N with max(eta_estimate, eta_runtime) * c^m.
Lemma1Report check_lemma1(const SystemModel& model, const Vector& x, int horizon,
                          const std::vector<int>& exponents, double eta_estimate,
                          const SolverConfig& config, double reach_tolerance = 1e-8);

struct DescentEntry {
  int k = 0;
  std::optional<double> lhs;        // J*_m(x_{k+1})
  std::optional<double> candidate;  // J_m(u~ | x_{k+1})
  double rhs = 0.0;  // J*_m(x_k) - l(x_{k+1})/N^m - (gamma/2) l*_N(x_k)
  bool optimality_ok = false;
  bool descent_ok = false;
  bool skipped = false;
};

struct DescentReport {
  std::vector<DescentEntry> entries;
  double tolerance = kInequalityTolerance;
  bool complete = true;
  bool optimality_pass = false;
  bool descent_pass = false;
  bool strictly_decreasing = false;
  double telescoped_stage_sum = 0.0;  // sum_k l(x_{k+1})
  double telescoped_bound = 0.0;      // N^m J*_m(x_0) + tol * steps
  bool telescoping_ok = false;
  bool pass = false;
};

DescentReport check_descent(const SystemModel& model, const SimulationRecord& record,
                            const ProofConstants& constants, double tolerance = kInequalityTolerance);

/// Ordinary least squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mwmpc
