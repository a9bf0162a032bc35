#pragma once

#include <Eigen/Dense>

namespace mwmpc {

struct LqrSolution {
  Eigen::MatrixXd cost_to_go;  // P
  Eigen::MatrixXd gain;        // K, u = -K x
  int iterations = 0;
};

/// Infinite-horizon discrete LQR by Riccati value iteration.
/// Throws std::runtime_error when the iteration does not settle.
LqrSolution solve_discrete_lqr(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                               const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                               int max_iterations = 100000, double tolerance = 1e-13);

}  // namespace mwmpc
