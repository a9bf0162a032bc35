#pragma once

#include "mwmpc/config.hpp"
#include "mwmpc/report_io.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mwmpc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,       // also any other runtime failure
  kCertificateFailed = 2, // certify found a failing certificate, or oracle-test a mismatch
};

struct Request {
  std::string command;  // simulate | sweep-m | certify | oracle-test
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
};

/// Exponent actually used by a run, with the data that produced m_min.
struct ExponentChoice {
  int exponent = 0;
  EtaEstimate eta;
  ReachabilityCheck reach;
  double eta_used = 0.0;
  ProofConstants constants;
};

ExponentChoice choose_exponent(const SystemModel& model, const ExperimentConfig& config);

SimulationRecord run_simulate(const ExperimentConfig& config);
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);
CertifyReport run_certify(const ExperimentConfig& config);
std::vector<OracleRow> run_oracle_test(const ExperimentConfig& config);

/// Loads the config, applies overrides, runs the subcommand and writes its artifact
/// into the output directory. Human-readable progress goes to `log`, diagnostics to `err`.
int run(const Request& request, std::ostream& log, std::ostream& err);

}  // namespace mwmpc::cli
