#pragma once

#include <Eigen/Dense>

namespace capcodes::lp {

struct LpSolution {
  bool feasible = false;
  double objective = 0.0;
  Eigen::VectorXd z;  // empty when infeasible
};

// Minimizes c.z subject to A z = b, z >= 0, with a dense two-phase tableau
// simplex.  Meant for the small, well-scaled feasibility problems of the
// polytope gauge (tens of rows, a few thousand columns).  Entering columns
// follow the most-negative rule and switch to Bland's rule when iterations
// pile up, so the solve cannot cycle; exceeding max_iters or losing
// feasibility during pivoting throws numerical_failure rather than
// returning a wrong answer.
LpSolution solve_equality_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& c, int max_iters = 50000);

}  // namespace capcodes::lp
