#pragma once

#include <Eigen/Dense>

namespace permchan {

// Dense two-phase simplex for small LPs in standard form:
//
//   minimize    c'x
//   subject to  A x = b,  x >= 0.
//
// Phase 1 minimizes the total constraint violation (sum of artificials), so
// an infeasible system reports how badly it fails instead of just "no".
// Bland's rule throughout; problem sizes here are tiny, robustness wins.
struct LpSolution {
  enum class Status { optimal, infeasible, unbounded, iteration_limit };

  Status status = Status::iteration_limit;
  Eigen::VectorXd x;
  double objective = 0.0;
  // Phase-1 optimum: minimal attainable sum of |A x - b| over x >= 0.
  double infeasibility = 0.0;
};

LpSolution solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                    double feas_tol = 1e-9, int max_iterations = 50000);

// Feasibility-only convenience: any x >= 0 with A x = b (within feas_tol).
LpSolution lp_feasible_point(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                             double feas_tol = 1e-9);

}  // namespace permchan
