#include "mwmpc/report_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mwmpc {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double get_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::invalid_argument("not a number: " + s);
}

json opt_num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

std::optional<double> get_opt_num(const json& j) {
  if (j.is_null()) return std::nullopt;
  return get_num(j);
}

json vec(const Vector& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

Vector get_vec(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = get_num(j[i]);
  return v;
}

json profile(const ControlProfile& p) {
  json a = json::array();
  for (const auto& u : p.controls) a.push_back(vec(u));
  return a;
}

ControlProfile get_profile(const json& j) {
  ControlProfile p;
  for (const auto& u : j) p.controls.push_back(get_vec(u));
  return p;
}

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

void to_json(json& j, const ReachabilityCheck& r) {
  j = {{"state", vec(r.state)},           {"horizon", r.horizon},
       {"residual", num(r.residual)},     {"tolerance", num(r.tolerance)},
       {"feasible", r.feasible},          {"profile", profile(r.profile)},
       {"partial_sum", num(r.partial_sum)}, {"diagnostic", r.diagnostic}};
}

void from_json(const json& j, ReachabilityCheck& r) {
  r.state = get_vec(j.at("state"));
  r.horizon = j.at("horizon").get<int>();
  r.residual = get_num(j.at("residual"));
  r.tolerance = get_num(j.at("tolerance"));
  r.feasible = j.at("feasible").get<bool>();
  r.profile = get_profile(j.at("profile"));
  r.partial_sum = get_num(j.at("partial_sum"));
  r.diagnostic = j.at("diagnostic").get<std::string>();
}

void to_json(json& j, const ClfCheck& r) {
  j = {{"rho_bar", num(r.rho_bar)},
       {"gamma", num(r.gamma)},
       {"samples", r.samples},
       {"ran", r.ran},
       {"worst_violation", num(r.worst_violation)},
       {"gamma_violation", num(r.gamma_violation)},
       {"pass", r.pass}};
}

void from_json(const json& j, ClfCheck& r) {
  r.rho_bar = get_num(j.at("rho_bar"));
  r.gamma = get_num(j.at("gamma"));
  r.samples = j.at("samples").get<int>();
  r.ran = j.at("ran").get<bool>();
  r.worst_violation = get_num(j.at("worst_violation"));
  r.gamma_violation = get_num(j.at("gamma_violation"));
  r.pass = j.at("pass").get<bool>();
}

void to_json(json& j, const EtaEstimate& r) {
  j = {{"value", num(r.value)},
       {"state_samples", r.state_samples},
       {"profile_samples", r.profile_samples},
       {"kind", "sampled lower estimate"}};
}

void from_json(const json& j, EtaEstimate& r) {
  r.value = get_num(j.at("value"));
  r.state_samples = j.at("state_samples").get<int>();
  r.profile_samples = j.at("profile_samples").get<int>();
}

void to_json(json& j, const ProofConstants& r) {
  j = {{"c", num(r.c)},         {"psi_m", num(r.psi_m)},     {"eta", num(r.eta)},
       {"gamma", num(r.gamma)}, {"rho_bar", num(r.rho_bar)}, {"m_min", r.m_min}};
}

void from_json(const json& j, ProofConstants& r) {
  r.c = get_num(j.at("c"));
  r.psi_m = get_num(j.at("psi_m"));
  r.eta = get_num(j.at("eta"));
  r.gamma = get_num(j.at("gamma"));
  r.rho_bar = get_num(j.at("rho_bar"));
  r.m_min = j.at("m_min").get<int>();
}

void to_json(json& j, const Lemma1Report& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"m", e.m},
                       {"measured", num(e.measured)},
                       {"bound", num(e.bound)},
                       {"holds", e.holds},
                       {"converged", e.converged}});
  }
  j = {{"applicable", r.applicable},     {"eta_estimate", num(r.eta_estimate)},
       {"eta_runtime", num(r.eta_runtime)}, {"eta_used", num(r.eta_used)},
       {"c", num(r.c)},                  {"entries", entries},
       {"fitted_slope", opt_num(r.fitted_slope)}, {"log_c", num(r.log_c)},
       {"pass", r.pass}};
}

void from_json(const json& j, Lemma1Report& r) {
  r.applicable = j.at("applicable").get<bool>();
  r.eta_estimate = get_num(j.at("eta_estimate"));
  r.eta_runtime = get_num(j.at("eta_runtime"));
  r.eta_used = get_num(j.at("eta_used"));
  r.c = get_num(j.at("c"));
  r.entries.clear();
  for (const auto& e : j.at("entries")) {
    r.entries.push_back({e.at("m").get<int>(), get_num(e.at("measured")), get_num(e.at("bound")),
                         e.at("holds").get<bool>(), e.at("converged").get<bool>()});
  }
  r.fitted_slope = get_opt_num(j.at("fitted_slope"));
  r.log_c = get_num(j.at("log_c"));
  r.pass = j.at("pass").get<bool>();
}

void to_json(json& j, const DescentReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"k", e.k},
                       {"lhs", opt_num(e.lhs)},
                       {"candidate", opt_num(e.candidate)},
                       {"rhs", num(e.rhs)},
                       {"optimality_ok", e.optimality_ok},
                       {"descent_ok", e.descent_ok},
                       {"skipped", e.skipped}});
  }
  j = {{"entries", entries},
       {"tolerance", num(r.tolerance)},
       {"complete", r.complete},
       {"optimality_pass", r.optimality_pass},
       {"descent_pass", r.descent_pass},
       {"strictly_decreasing", r.strictly_decreasing},
       {"telescoped_stage_sum", num(r.telescoped_stage_sum)},
       {"telescoped_bound", num(r.telescoped_bound)},
       {"telescoping_ok", r.telescoping_ok},
       {"pass", r.pass}};
}

void from_json(const json& j, DescentReport& r) {
  r.entries.clear();
  for (const auto& e : j.at("entries")) {
    DescentEntry d;
    d.k = e.at("k").get<int>();
    d.lhs = get_opt_num(e.at("lhs"));
    d.candidate = get_opt_num(e.at("candidate"));
    d.rhs = get_num(e.at("rhs"));
    d.optimality_ok = e.at("optimality_ok").get<bool>();
    d.descent_ok = e.at("descent_ok").get<bool>();
    d.skipped = e.at("skipped").get<bool>();
    r.entries.push_back(d);
  }
  r.tolerance = get_num(j.at("tolerance"));
  r.complete = j.at("complete").get<bool>();
  r.optimality_pass = j.at("optimality_pass").get<bool>();
  r.descent_pass = j.at("descent_pass").get<bool>();
  r.strictly_decreasing = j.at("strictly_decreasing").get<bool>();
  r.telescoped_stage_sum = get_num(j.at("telescoped_stage_sum"));
  r.telescoped_bound = get_num(j.at("telescoped_bound"));
  r.telescoping_ok = j.at("telescoping_ok").get<bool>();
  r.pass = j.at("pass").get<bool>();
}

void to_json(json& j, const CertifyReport& r) {
  j = {{"config", r.config},
       {"reachability", opt(r.reachability)},
       {"clf", opt(r.clf)},
       {"eta", r.eta},
       {"eta_used", num(r.eta_used)},
       {"proof_constants", r.constants},
       {"exponent", r.exponent},
       {"lemma1", opt(r.lemma1)},
       {"descent", opt(r.descent)},
       {"termination", r.termination},
       {"simulated_steps", r.simulated_steps},
       {"passed", r.passed}};
}

void from_json(const json& j, CertifyReport& r) {
  r.config = j.at("config");
  r.reachability = get_opt<ReachabilityCheck>(j.at("reachability"));
  r.clf = get_opt<ClfCheck>(j.at("clf"));
  r.eta = j.at("eta").get<EtaEstimate>();
  r.eta_used = get_num(j.at("eta_used"));
  r.constants = j.at("proof_constants").get<ProofConstants>();
  r.exponent = j.at("exponent").get<int>();
  r.lemma1 = get_opt<Lemma1Report>(j.at("lemma1"));
  r.descent = get_opt<DescentReport>(j.at("descent"));
  r.termination = j.at("termination").get<std::string>();
  r.simulated_steps = j.at("simulated_steps").get<int>();
  r.passed = j.at("passed").get<bool>();
}

void write_steps_csv(std::ostream& out, const SimulationRecord& record) {
  const Eigen::Index n = record.final_state.size();
  const Eigen::Index nu = record.steps.empty() ? 0 : record.steps.front().applied_control.size();
  out << "k";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i;
  for (Eigen::Index i = 0; i < nu; ++i) out << ",u" << i;
  out << ",stage_cost,optimal_cost,terminal_stage_cost,candidate_cost\n";
  for (const auto& s : record.steps) {
    out << s.k;
    for (double v : s.state) out << ',' << format_double(v);
    for (double v : s.applied_control) out << ',' << format_double(v);
    out << ',' << format_double(s.stage_cost) << ',' << format_double(s.optimal_cost) << ','
        << format_double(s.terminal_stage_cost) << ','
        << (s.candidate_cost ? format_double(*s.candidate_cost) : std::string()) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "m,converged,steps_to_stop_level,final_stage_cost,lemma1_bound,lemma1_measured\n";
  for (const auto& r : rows) {
    out << r.m << ',' << (r.converged ? 1 : 0) << ','
        << (r.steps_to_stop_level ? std::to_string(*r.steps_to_stop_level) : std::string()) << ','
        << format_double(r.final_stage_cost) << ',' << format_double(r.lemma1_bound) << ','
        << format_double(r.lemma1_measured) << '\n';
  }
}

void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows) {
  const Eigen::Index n = rows.empty() ? 0 : rows.front().x0.size();
  out << "m";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i;
  out << ",oracle_cost,solve_cost,grid_start_cost,dominance_ok,argmin_match\n";
  for (const auto& r : rows) {
    out << r.m;
    for (double v : r.x0) out << ',' << format_double(v);
    out << ',' << format_double(r.oracle_cost) << ',' << format_double(r.solve_cost) << ','
        << format_double(r.grid_start_cost) << ',' << (r.dominance_ok ? 1 : 0) << ','
        << (r.argmin_match ? 1 : 0) << '\n';
  }
}

}  // namespace mwmpc
