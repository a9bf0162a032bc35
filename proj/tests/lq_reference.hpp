#pragma once

#include "mwmpc/types.hpp"
#include "mwmpc/weighting.hpp"

#include <Eigen/Dense>

namespace mwmpc::testing {

/// Exact gradient of J(u) = sum_i w_i x_i' P x_i for the double integrator, using the
/// lifted map x_i = A^i x0 + sum_{j<i} A^{i-1-j} B u_j. P is the reference Riccati
/// matrix (Q = I, R = 1) computed independently with a dense DARE solver.
inline Vector double_integrator_gradient(const WeightSpec& spec, const Vector& x0, const Vector& u) {
  Eigen::Matrix2d a, p;
  a << 1, 1, 0, 1;
  p << 2.3671014909478783, 1.1180339887498953, 1.1180339887498953, 2.587482927325334;
  const Eigen::Vector2d b(0.5, 1.0);
  const int n = spec.horizon;
  std::vector<Eigen::Vector2d> xs;
  Eigen::Vector2d x = x0;
  for (int i = 0; i < n; ++i) {
    x = a * x + b * u[i];
    xs.push_back(x);
  }
  Vector g = Vector::Zero(n);
  for (int i = 1; i <= n; ++i) {
    const Eigen::Vector2d px = 2.0 * spec.weight(i) * (p * xs[static_cast<std::size_t>(i - 1)]);
    Eigen::Matrix2d power = Eigen::Matrix2d::Identity();  // A^{i-1-j}
    for (int j = i - 1; j >= 0; --j) {
      g[j] += (power * b).dot(px);
      power = a * power;
    }
  }
  return g;
}

}  // namespace mwmpc::testing
