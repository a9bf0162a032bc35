#pragma once

#include "mwmpc/certificates.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mwmpc {

/// Shortest decimal form that parses back to the same double; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_double(double v);

/// Everything `certify` produces. Sections that were switched off stay empty.
struct CertifyReport {
  nlohmann::json config;
  std::optional<ReachabilityCheck> reachability;
  std::optional<ClfCheck> clf;
  EtaEstimate eta;
  double eta_used = 0.0;
  ProofConstants constants;
  int exponent = 0;
  std::optional<Lemma1Report> lemma1;
  std::optional<DescentReport> descent;
  std::string termination;
  int simulated_steps = 0;
  bool passed = false;
};

void to_json(nlohmann::json& j, const ReachabilityCheck& r);
void from_json(const nlohmann::json& j, ReachabilityCheck& r);
void to_json(nlohmann::json& j, const ClfCheck& r);
void from_json(const nlohmann::json& j, ClfCheck& r);
void to_json(nlohmann::json& j, const EtaEstimate& r);
void from_json(const nlohmann::json& j, EtaEstimate& r);
void to_json(nlohmann::json& j, const ProofConstants& r);
void from_json(const nlohmann::json& j, ProofConstants& r);
void to_json(nlohmann::json& j, const Lemma1Report& r);
void from_json(const nlohmann::json& j, Lemma1Report& r);
void to_json(nlohmann::json& j, const DescentReport& r);
void from_json(const nlohmann::json& j, DescentReport& r);
void to_json(nlohmann::json& j, const CertifyReport& r);
void from_json(const nlohmann::json& j, CertifyReport& r);

/// Long-format step table: k, x0.., u0.., stage_cost, optimal_cost,
/// terminal_stage_cost, candidate_cost.
void write_steps_csv(std::ostream& out, const SimulationRecord& record);

struct SweepRow {
  int m = 0;
  bool converged = false;
  std::optional<int> steps_to_stop_level;
  double final_stage_cost = 0.0;
  double lemma1_bound = 0.0;
  double lemma1_measured = 0.0;
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct OracleRow {
  int m = 0;
  Vector x0;
  double oracle_cost = 0.0;
  double solve_cost = 0.0;
  double grid_start_cost = 0.0;
  bool dominance_ok = false;
  bool argmin_match = false;
};

void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows);

}  // namespace mwmpc
