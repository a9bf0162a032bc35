#pragma once

#include "mwmpc/benchmarks.hpp"
#include "mwmpc/optimizer.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mwmpc {

struct CertifyOptions {
  bool reachability = true;
  bool clf = true;
  bool lemma1 = true;
  bool descent = true;
  int clf_samples = 10000;
  int eta_state_samples = 2000;
  int eta_profile_samples = 50;
  std::vector<int> lemma1_exponents = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double reach_tolerance = 1e-8;
  std::optional<double> gamma;    // defaults to the model's documented value
  std::optional<double> rho_bar;  // idem
};

struct OracleOptions {
  std::vector<std::vector<double>> levels;  // one list per control component
  std::vector<int> exponents = {0, 1, 2};
  std::vector<Vector> initial_states;
};

/// Everything a CLI run needs. Parsed from YAML; see configs/ for examples.
struct ExperimentConfig {
  std::string system;
  std::map<std::string, double> params;
  ControllerVariant controller = ControllerVariant::kDefault;
  int horizon = 2;
  std::optional<int> exponent;  // empty means m_min
  int m_first = 0;
  int m_last = 10;
  Vector initial_state;
  int steps = 100;
  double stop_level = 1e-10;
  SolverConfig solver;
  CertifyOptions certify;
  OracleOptions oracle;
  std::uint64_t seed = 0;
  int workers = 0;  // 0: OpenMP default
  std::string tag;
  std::string output_dir = "out";
};

/// Throws ConfigError with "<source>:<line>:<column>: <field>: <problem>".
ExperimentConfig parse_config(const std::string& text, const std::string& source_name);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace mwmpc
