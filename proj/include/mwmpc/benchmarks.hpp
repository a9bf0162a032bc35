#pragma once

#include "mwmpc/system_model.hpp"

#include <map>
#include <string>
#include <vector>

namespace mwmpc {

/// Which local controller a builtin carries.
enum class ControllerVariant {
  kDefault,   // the documented certified controller
  kZero,      // u = 0
  kIdentity,  // u = first n_u state components (deliberately bad)
};

ControllerVariant parse_controller_variant(const std::string& name);
std::string to_string(ControllerVariant v);

const std::vector<std::string>& builtin_names();

/// Builtin benchmarks:
///   scalar_affine      x+ = 0.5 x + u, l = x^2, q = 0.5 x^2, kappa = 0, box [-1, 1],
///                      gamma = 0.5, rho_bar = 1.
///   double_integrator  x+ = [1 1; 0 1] x + [0.5; 1] u, l = x'Px with P the LQR
///                      cost-to-go (Q = I, R = 1), kappa = LQR gain, box [-1, 1],
///                      gamma = 0.45, rho_bar = 2.4.
///   pendulum           explicit Euler of th'' = sin th - d th' + u with step T
///                      (defaults T = 0.1, d = 0.1), l = x'Px from the LQR of the
///                      linearization, kappa = its gain, box [-3, 3], gamma = 0.1,
///                      rho_bar = 0.5.
/// `params` may override "T", "damping" (pendulum) and "u_max" (all).
/// Unknown names throw ConfigError listing the valid ones.
SystemModel builtin_system(const std::string& name,
                           const std::map<std::string, double>& params = {},
                           ControllerVariant controller = ControllerVariant::kDefault);

}  // namespace mwmpc
