#include "mwmpc/config.hpp"

#include "mwmpc/errors.hpp"
#include "mwmpc/weighting.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace mwmpc {
namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& problem) const {
    std::ostringstream os;
    os << source_;
    const YAML::Mark mark = node.Mark();
    if (!mark.is_null()) os << ':' << mark.line + 1 << ':' << mark.column + 1;
    os << ": " << field << ": " << problem;
    throw ConfigError(os.str());
  }

  void expect_map(const YAML::Node& node, const std::string& field, std::set<std::string> allowed) const {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, field.empty() ? key : field + "." + key, "unknown key");
    }
  }

  template <typename T>
  T scalar(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::BadConversion&) {
      fail(node, field, "cannot convert '" + node.Scalar() + "'");
    }
  }

  template <typename T>
  std::vector<T> list(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a sequence");
    std::vector<T> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      out.push_back(scalar<T>(node[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  Vector vector(const YAML::Node& node, const std::string& field) const {
    const auto values = list<double>(node, field);
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
  }

  template <typename T>
  void optional(const YAML::Node& parent, const char* key, const std::string& prefix, T& target) const {
    if (const YAML::Node n = parent[key]) target = scalar<T>(n, prefix + key);
  }

 private:
  std::string source_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source_name) {
  const Reader r(source_name);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source_name + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  r.expect_map(root, "", {"system", "horizon", "exponent", "m_range", "initial_state", "steps", "stop_level",
                          "seed", "workers", "tag", "output_dir", "solver", "certify", "oracle"});

  ExperimentConfig c;
  const YAML::Node sys = root["system"];
  if (!sys) r.fail(root, "system", "missing");
  r.expect_map(sys, "system", {"name", "params", "local_controller"});
  if (!sys["name"]) r.fail(sys, "system.name", "missing");
  c.system = r.scalar<std::string>(sys["name"], "system.name");
  if (const YAML::Node p = sys["params"]) {
    if (!p.IsMap()) r.fail(p, "system.params", "expected a mapping");
    for (const auto& kv : p) {
      const auto key = kv.first.as<std::string>();
      c.params[key] = r.scalar<double>(kv.second, "system.params." + key);
    }
  }
  if (const YAML::Node lc = sys["local_controller"]) {
    try {
      c.controller = parse_controller_variant(r.scalar<std::string>(lc, "system.local_controller"));
    } catch (const ConfigError& e) {
      r.fail(lc, "system.local_controller", e.what());
    }
  }

  SystemModel model;
  try {
    model = builtin_system(c.system, c.params, c.controller);
  } catch (const ConfigError& e) {
    r.fail(sys, "system", e.what());
  }

  c.horizon = model.metadata.default_horizon;
  r.optional(root, "horizon", "", c.horizon);
  if (c.horizon < 2) r.fail(root["horizon"], "horizon", "must be >= 2");

  if (const YAML::Node e = root["exponent"]) {
    if (e.IsScalar() && e.Scalar() == "auto") {
      c.exponent.reset();
    } else {
      c.exponent = r.scalar<int>(e, "exponent");
      if (*c.exponent < 0) r.fail(e, "exponent", "must be >= 0 or 'auto'");
    }
  }
  if (const YAML::Node mr = root["m_range"]) {
    const auto range = r.list<int>(mr, "m_range");
    if (range.size() != 2) r.fail(mr, "m_range", "expected [first, last]");
    if (range[0] < 0 || range[1] < range[0]) r.fail(mr, "m_range", "must satisfy 0 <= first <= last");
    c.m_first = range[0];
    c.m_last = range[1];
  }

  c.initial_state = model.metadata.demo_state;
  if (const YAML::Node x = root["initial_state"]) {
    c.initial_state = r.vector(x, "initial_state");
    if (c.initial_state.size() != model.state_dim) {
      r.fail(x, "initial_state", "expected " + std::to_string(model.state_dim) + " components");
    }
  }
  r.optional(root, "steps", "", c.steps);
  if (c.steps < 1) r.fail(root["steps"], "steps", "must be >= 1");
  r.optional(root, "stop_level", "", c.stop_level);
  if (!(c.stop_level >= 0.0)) r.fail(root["stop_level"], "stop_level", "must be >= 0");

  if (!root["seed"]) r.fail(root, "seed", "missing (seeds are mandatory)");
  c.seed = r.scalar<std::uint64_t>(root["seed"], "seed");
  r.optional(root, "workers", "", c.workers);
  if (c.workers < 0) r.fail(root["workers"], "workers", "must be >= 0");
  c.tag = c.system;
  r.optional(root, "tag", "", c.tag);
  r.optional(root, "output_dir", "", c.output_dir);

  if (const YAML::Node s = root["solver"]) {
    r.expect_map(s, "solver", {"max_iterations", "gradient_tolerance", "step_init", "num_starts", "fd_epsilon"});
    r.optional(s, "max_iterations", "solver.", c.solver.max_iterations);
    r.optional(s, "gradient_tolerance", "solver.", c.solver.gradient_tolerance);
    r.optional(s, "step_init", "solver.", c.solver.step_init);
    r.optional(s, "num_starts", "solver.", c.solver.num_starts);
    r.optional(s, "fd_epsilon", "solver.", c.solver.fd_epsilon);
    try {
      c.solver.validate();
    } catch (const std::invalid_argument& e) {
      r.fail(s, "solver", e.what());
    }
  }
  c.solver.seed = c.seed;

  if (const YAML::Node ce = root["certify"]) {
    r.expect_map(ce, "certify", {"reachability", "clf", "lemma1", "descent", "clf_samples", "eta_state_samples",
                                 "eta_profile_samples", "lemma1_exponents", "reach_tolerance", "gamma", "rho_bar"});
    CertifyOptions& o = c.certify;
    r.optional(ce, "reachability", "certify.", o.reachability);
    r.optional(ce, "clf", "certify.", o.clf);
    r.optional(ce, "lemma1", "certify.", o.lemma1);
    r.optional(ce, "descent", "certify.", o.descent);
    r.optional(ce, "clf_samples", "certify.", o.clf_samples);
    r.optional(ce, "eta_state_samples", "certify.", o.eta_state_samples);
    r.optional(ce, "eta_profile_samples", "certify.", o.eta_profile_samples);
    r.optional(ce, "reach_tolerance", "certify.", o.reach_tolerance);
    if (const YAML::Node le = ce["lemma1_exponents"]) {
      o.lemma1_exponents = r.list<int>(le, "certify.lemma1_exponents");
      if (o.lemma1_exponents.empty()) r.fail(le, "certify.lemma1_exponents", "must not be empty");
      for (int m : o.lemma1_exponents) {
        if (m < 0) r.fail(le, "certify.lemma1_exponents", "exponents must be >= 0");
      }
    }
    if (const YAML::Node g = ce["gamma"]) {
      o.gamma = r.scalar<double>(g, "certify.gamma");
      if (!(*o.gamma > 0.0)) r.fail(g, "certify.gamma", "must be > 0");
    }
    if (const YAML::Node rb = ce["rho_bar"]) {
      o.rho_bar = r.scalar<double>(rb, "certify.rho_bar");
      if (!(*o.rho_bar > 0.0)) r.fail(rb, "certify.rho_bar", "must be > 0");
    }
    if (o.clf_samples < 0) r.fail(ce, "certify.clf_samples", "must be >= 0");
    if (o.eta_state_samples < 0 || o.eta_profile_samples < 0) r.fail(ce, "certify", "eta sample counts must be >= 0");
  }

  if (const YAML::Node orc = root["oracle"]) {
    r.expect_map(orc, "oracle", {"levels", "exponents", "initial_states"});
    OracleOptions& o = c.oracle;
    if (const YAML::Node lv = orc["levels"]) {
      if (!lv.IsSequence()) r.fail(lv, "oracle.levels", "expected a sequence");
      // a flat list applies to every control component
      if (lv.size() > 0 && lv[0].IsScalar()) {
        o.levels.assign(model.control_dim, r.list<double>(lv, "oracle.levels"));
      } else {
        for (std::size_t i = 0; i < lv.size(); ++i) {
          o.levels.push_back(r.list<double>(lv[i], "oracle.levels[" + std::to_string(i) + "]"));
        }
      }
      if (static_cast<int>(o.levels.size()) != model.control_dim) {
        r.fail(lv, "oracle.levels", "expected one level list per control component");
      }
      for (const auto& axis : o.levels) {
        if (axis.empty()) r.fail(lv, "oracle.levels", "level lists must not be empty");
      }
    }
    if (const YAML::Node ex = orc["exponents"]) o.exponents = r.list<int>(ex, "oracle.exponents");
    if (const YAML::Node xs = orc["initial_states"]) {
      if (!xs.IsSequence()) r.fail(xs, "oracle.initial_states", "expected a sequence");
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::string field = "oracle.initial_states[" + std::to_string(i) + "]";
        Vector x = r.vector(xs[i], field);
        if (x.size() != model.state_dim) r.fail(xs[i], field, "wrong state dimension");
        o.initial_states.push_back(std::move(x));
      }
    }
  }
  if (c.oracle.levels.empty()) {
    std::vector<double> five;
    for (int i = 0; i < 5; ++i) {
      const double lo = model.control_box.lower[0];
      const double hi = model.control_box.upper[0];
      five.push_back(lo + (hi - lo) * i / 4.0);
    }
    c.oracle.levels.assign(model.control_dim, five);
  }
  if (c.oracle.initial_states.empty()) c.oracle.initial_states.push_back(c.initial_state);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

nlohmann::json to_json(const ExperimentConfig& c) {
  using nlohmann::json;
  auto vec = [](const Vector& v) { return std::vector<double>(v.begin(), v.end()); };
  json oracle_states = json::array();
  for (const auto& x : c.oracle.initial_states) oracle_states.push_back(vec(x));
  json j = {
      {"system", {{"name", c.system}, {"params", c.params}, {"local_controller", to_string(c.controller)}}},
      {"horizon", c.horizon},
      {"exponent", c.exponent ? json(*c.exponent) : json("auto")},
      {"m_range", {c.m_first, c.m_last}},
      {"initial_state", vec(c.initial_state)},
      {"steps", c.steps},
      {"stop_level", c.stop_level},
      {"seed", c.seed},
      {"workers", c.workers},
      {"tag", c.tag},
      {"solver",
       {{"max_iterations", c.solver.max_iterations},
        {"gradient_tolerance", c.solver.gradient_tolerance},
        {"step_init", c.solver.step_init},
        {"num_starts", c.solver.num_starts},
        {"fd_epsilon", c.solver.fd_epsilon}}},
      {"certify",
       {{"reachability", c.certify.reachability},
        {"clf", c.certify.clf},
        {"lemma1", c.certify.lemma1},
        {"descent", c.certify.descent},
        {"clf_samples", c.certify.clf_samples},
        {"eta_state_samples", c.certify.eta_state_samples},
        {"eta_profile_samples", c.certify.eta_profile_samples},
        {"lemma1_exponents", c.certify.lemma1_exponents},
        {"reach_tolerance", c.certify.reach_tolerance},
        {"gamma", c.certify.gamma ? json(*c.certify.gamma) : json(nullptr)},
        {"rho_bar", c.certify.rho_bar ? json(*c.certify.rho_bar) : json(nullptr)}}},
      {"oracle", {{"levels", c.oracle.levels}, {"exponents", c.oracle.exponents}, {"initial_states", oracle_states}}},
  };
  return j;
}

}  // namespace mwmpc
