#include "mwmpc/benchmarks.hpp"

#include "mwmpc/errors.hpp"
#include "mwmpc/lqr.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace mwmpc {
namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::string& system, const std::map<std::string, double>& params,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("system '" + system + "' has no parameter '" + key + "'");
  }
}

// l(x) = x'Px with B_l(rho) bounded by |x_i| <= sqrt(rho (P^-1)_ii).
void attach_quadratic_cost(SystemModel& model, const Eigen::MatrixXd& p, double gamma) {
  model.stage_cost = [p](const Vector& x) { return x.dot(p * x); };
  model.decrease_fn = [p, gamma](const Vector& x) { return gamma * x.dot(p * x); };
  const Vector inv_diag = p.inverse().diagonal();
  model.sublevel_box = [inv_diag](double rho) {
    const Vector hw = (rho * inv_diag).cwiseSqrt();
    return Box(-hw, hw);
  };
}

void attach_controller(SystemModel& model, ControllerVariant variant, SystemModel::ControllerFn def) {
  switch (variant) {
    case ControllerVariant::kDefault:
      model.local_controller = std::move(def);
      break;
    case ControllerVariant::kZero: {
      const int nu = model.control_dim;
      model.local_controller = [nu](const Vector&) { return Vector(Vector::Zero(nu)); };
      break;
    }
    case ControllerVariant::kIdentity: {
      const int nu = model.control_dim;
      model.local_controller = [nu](const Vector& x) { return Vector(x.head(nu)); };
      break;
    }
  }
}

SystemModel scalar_affine(const std::map<std::string, double>& params, ControllerVariant variant) {
  reject_unknown("scalar_affine", params, {"u_max"});
  const double u_max = param_or(params, "u_max", 1.0);
  constexpr double gamma = 0.5;

  SystemModel m;
  m.name = "scalar_affine";
  m.state_dim = 1;
  m.control_dim = 1;
  m.step = [](const Vector& x, const Vector& u) { return Vector(0.5 * x + u); };
  m.stage_cost = [](const Vector& x) { return x[0] * x[0]; };
  m.decrease_fn = [](const Vector& x) { return gamma * x[0] * x[0]; };
  m.control_box = Box::uniform(1, -u_max, u_max);
  m.sublevel_box = [](double rho) { return Box::uniform(1, -std::sqrt(rho), std::sqrt(rho)); };
  attach_controller(m, variant, [](const Vector&) { return Vector(Vector::Zero(1)); });

  // l(0.5 x) - l(x) = -0.75 x^2 <= -q(x)
  m.metadata.gamma = gamma;
  m.metadata.rho_bar = 1.0;
  m.metadata.state_region = Box::uniform(1, -1.0, 1.0);
  m.metadata.default_horizon = 3;
  m.metadata.demo_state = Vector::Constant(1, 1.0);
  m.metadata.parameters = {{"u_max", u_max}};
  m.metadata.description = "x+ = 0.5x + u, l = x^2, q = 0.5x^2, kappa = 0";
  return m;
}

SystemModel double_integrator(const std::map<std::string, double>& params, ControllerVariant variant) {
  reject_unknown("double_integrator", params, {"u_max"});
  const double u_max = param_or(params, "u_max", 1.0);
  constexpr double gamma = 0.45;

  Eigen::MatrixXd a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  Eigen::MatrixXd b(2, 1);
  b << 0.5, 1.0;
  const LqrSolution lqr = solve_discrete_lqr(a, b, Eigen::MatrixXd::Identity(2, 2),
                                             Eigen::MatrixXd::Identity(1, 1));

  SystemModel m;
  m.name = "double_integrator";
  m.state_dim = 2;
  m.control_dim = 1;
  m.step = [a, b](const Vector& x, const Vector& u) { return Vector(a * x + b * u); };
  attach_quadratic_cost(m, lqr.cost_to_go, gamma);
  m.control_box = Box::uniform(1, -u_max, u_max);
  const Eigen::MatrixXd k = lqr.gain;
  attach_controller(m, variant, [k](const Vector& x) { return Vector(-k * x); });

  // Closed loop decrease is x'(I + K'K)x >= 0.4959 x'Px; rho_bar keeps |Kx| <= 1.
  m.metadata.gamma = gamma;
  m.metadata.rho_bar = 2.4;
  m.metadata.state_region = Box::uniform(2, -1.0, 1.0);
  m.metadata.default_horizon = 2;
  m.metadata.demo_state = Vector::Unit(2, 0);
  m.metadata.parameters = {{"u_max", u_max}};
  m.metadata.description =
      "x+ = [1 1; 0 1]x + [0.5; 1]u, l = x'Px (LQR cost-to-go, Q = I, R = 1), kappa = -Kx";
  return m;
}

SystemModel pendulum(const std::map<std::string, double>& params, ControllerVariant variant) {
  reject_unknown("pendulum", params, {"T", "damping", "u_max"});
  const double t = param_or(params, "T", 0.1);
  const double d = param_or(params, "damping", 0.1);
  const double u_max = param_or(params, "u_max", 3.0);
  if (!(t > 0.0)) throw ConfigError("pendulum: T must be positive");
  constexpr double gamma = 0.1;

  Eigen::MatrixXd a(2, 2);
  a << 1.0, t, t, 1.0 - t * d;
  Eigen::MatrixXd b(2, 1);
  b << 0.0, t;
  const LqrSolution lqr = solve_discrete_lqr(a, b, Eigen::MatrixXd::Identity(2, 2),
                                             Eigen::MatrixXd::Identity(1, 1));

  SystemModel m;
  m.name = "pendulum";
  m.state_dim = 2;
  m.control_dim = 1;
  m.step = [t, d](const Vector& x, const Vector& u) {
    Vector next(2);
    next[0] = x[0] + t * x[1];
    next[1] = x[1] + t * (std::sin(x[0]) - d * x[1] + u[0]);
    return next;
  };
  attach_quadratic_cost(m, lqr.cost_to_go, gamma);
  m.control_box = Box::uniform(1, -u_max, u_max);
  const Eigen::MatrixXd k = lqr.gain;
  attach_controller(m, variant, [k](const Vector& x) { return Vector(-k * x); });

  m.metadata.gamma = gamma;
  m.metadata.rho_bar = 0.5;
  m.metadata.state_region = Box::uniform(2, -0.2, 0.2);
  m.metadata.default_horizon = 5;
  m.metadata.demo_state = Vector::Unit(2, 0) * 0.1;
  m.metadata.parameters = {{"T", t}, {"damping", d}, {"u_max", u_max}};
  m.metadata.description =
      "explicit Euler of th'' = sin th - d th' + u, l = x'Px from the LQR of the linearization";
  return m;
}

}  // namespace

ControllerVariant parse_controller_variant(const std::string& name) {
  if (name == "default") return ControllerVariant::kDefault;
  if (name == "zero") return ControllerVariant::kZero;
  if (name == "identity") return ControllerVariant::kIdentity;
  throw ConfigError("unknown local controller '" + name + "' (valid: default, zero, identity)");
}

std::string to_string(ControllerVariant v) {
  switch (v) {
    case ControllerVariant::kDefault: return "default";
    case ControllerVariant::kZero: return "zero";
    case ControllerVariant::kIdentity: return "identity";
  }
  return "default";
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"scalar_affine", "double_integrator", "pendulum"};
  return names;
}

SystemModel builtin_system(const std::string& name, const std::map<std::string, double>& params,
                           ControllerVariant controller) {
  if (name == "scalar_affine") return scalar_affine(params, controller);
  if (name == "double_integrator") return double_integrator(params, controller);
  if (name == "pendulum") return pendulum(params, controller);
  std::string valid;
  for (const auto& n : builtin_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown system '" + name + "' (valid: " + valid + ")");
}

}  // namespace mwmpc
