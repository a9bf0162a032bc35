#include "mwmpc/lqr.hpp"

#include <stdexcept>

namespace mwmpc {

LqrSolution solve_discrete_lqr(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                               const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                               int max_iterations, double tolerance) {
  Eigen::MatrixXd p = q;
  for (int it = 1; it <= max_iterations; ++it) {
    const Eigen::MatrixXd bt_p = b.transpose() * p;
    const Eigen::MatrixXd k = (r + bt_p * b).ldlt().solve(bt_p * a);
    Eigen::MatrixXd next = q + a.transpose() * p * (a - b * k);
    next = 0.5 * (next + next.transpose());
    const double change = (next - p).cwiseAbs().maxCoeff();
    p = std::move(next);
    if (change <= tolerance * (1.0 + p.cwiseAbs().maxCoeff())) {
      const Eigen::MatrixXd bt_pf = b.transpose() * p;
      return {p, (r + bt_pf * b).ldlt().solve(bt_pf * a), it};
    }
  }
  throw std::runtime_error("Riccati iteration did not converge");
}

}  // namespace mwmpc
