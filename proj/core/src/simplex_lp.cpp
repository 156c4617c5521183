#include "permchan/simplex_lp.hpp"

#include <cmath>
#include <vector>

namespace permchan {

namespace {

constexpr double kPivotTol = 1e-11;

// Tableau layout: columns [0, n) structural, [n, n+m) artificial, last = rhs.
struct Tableau {
  Eigen::MatrixXd rows;      // m x (n + m + 1)
  Eigen::RowVectorXd cost;   // reduced costs, same width
  std::vector<int> basis;    // basis[i] = column basic in row i
  int n = 0;                 // structural variable count
  int m = 0;

  int rhs_col() const { return n + m; }

  void pivot(int row, int col) {
    rows.row(row) /= rows(row, col);
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double factor = rows(i, col);
      if (factor != 0.0) rows.row(i) -= factor * rows.row(row);
    }
    const double cfactor = cost(col);
    if (cfactor != 0.0) cost -= cfactor * rows.row(row);
    basis[row] = col;
  }

  // Bland's rule: smallest eligible entering column, smallest basic variable
  // among ratio-test ties. Returns false once no reduced cost is negative.
  bool iterate(bool allow_artificial_entering, int* iterations, int max_iterations,
               bool* hit_limit, bool* unbounded) {
    for (;;) {
      if (++*iterations > max_iterations) {
        *hit_limit = true;
        return false;
      }
      int entering = -1;
      const int limit = allow_artificial_entering ? n + m : n;
      for (int j = 0; j < limit; ++j) {
        if (cost(j) < -kPivotTol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return false;

      int leaving = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        const double a = rows(i, entering);
        if (a > kPivotTol) {
          const double ratio = rows(i, rhs_col()) / a;
          if (leaving < 0 || ratio < best_ratio - kPivotTol ||
              (ratio < best_ratio + kPivotTol && basis[i] < basis[leaving])) {
            leaving = i;
            best_ratio = ratio;
          }
        }
      }
      if (leaving < 0) {
        *unbounded = true;
        return false;
      }
      pivot(leaving, entering);
    }
  }
};

}  // namespace

LpSolution solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                    double feas_tol, int max_iterations) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());

  Tableau t;
  t.n = n;
  t.m = m;
  t.basis.resize(m);
  t.rows.setZero(m, n + m + 1);
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.rows.block(i, 0, 1, n) = sign * A.row(i);
    t.rows(i, n + i) = 1.0;
    t.rows(i, t.rhs_col()) = sign * b(i);
    t.basis[i] = n + i;
  }

  // Phase 1: minimize the artificial total. With the artificial basis the
  // reduced cost row is minus the column sums of the structural block.
  t.cost.setZero(n + m + 1);
  for (int i = 0; i < m; ++i) {
    t.cost.head(n) -= t.rows.row(i).head(n);
    t.cost(t.rhs_col()) -= t.rows(i, t.rhs_col());
  }

  LpSolution out;
  int iterations = 0;
  bool hit_limit = false;
  bool unbounded = false;
  t.iterate(/*allow_artificial_entering=*/false, &iterations, max_iterations, &hit_limit,
            &unbounded);
  if (hit_limit) {
    out.status = LpSolution::Status::iteration_limit;
    return out;
  }

  out.infeasibility = -t.cost(t.rhs_col());
  if (out.infeasibility < 0.0) out.infeasibility = 0.0;
  if (out.infeasibility > feas_tol) {
    out.status = LpSolution::Status::infeasible;
    return out;
  }

  // Kick artificials out of the basis where a structural pivot exists;
  // rows with none are redundant and keep a zero-valued artificial.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(t.rows(i, j)) > kPivotTol) {
        t.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 over the original objective; artificial columns stay excluded.
  t.cost.setZero(n + m + 1);
  t.cost.head(n) = c.transpose();
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) {
      const double cb = c(t.basis[i]);
      if (cb != 0.0) t.cost -= cb * t.rows.row(i);
    }
  }
  t.iterate(/*allow_artificial_entering=*/false, &iterations, max_iterations, &hit_limit,
            &unbounded);
  if (hit_limit) {
    out.status = LpSolution::Status::iteration_limit;
    return out;
  }
  if (unbounded) {
    out.status = LpSolution::Status::unbounded;
    return out;
  }

  out.x.setZero(n);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) out.x(t.basis[i]) = t.rows(i, t.rhs_col());
  }
  for (int j = 0; j < n; ++j) {
    if (out.x(j) < 0.0) out.x(j) = 0.0;  // scrub pivot noise
  }
  out.objective = c.dot(out.x);
  out.status = LpSolution::Status::optimal;
  return out;
}

LpSolution lp_feasible_point(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double feas_tol) {
  return solve_lp(A, b, Eigen::VectorXd::Zero(A.cols()), feas_tol);
}

}  // namespace permchan
