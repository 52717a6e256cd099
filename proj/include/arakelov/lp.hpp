#pragma once

// Dense two-phase simplex for  minimize c.x  subject to  A x <= b, x free.
// Sized for the few-dozen-row problems of the minimax layer.

#include <Eigen/Dense>

namespace arakelov {

struct LinearProgram {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

struct LpResult {
  Eigen::VectorXd x;
  Eigen::VectorXd y;  // multipliers, y >= 0, A^T y + c = 0 at optimum
  double value = 0.0;
  double primal_residual = 0.0;  // max(0, max_i (A x - b)_i)
  double dual_residual = 0.0;    // ||A^T y + c||_inf
  double dual_sign = 0.0;        // max(0, -min_i y_i)
  double gap = 0.0;              // |c.x + b.y|
  int iterations = 0;

  bool certified(double tol) const {
    return primal_residual < tol && dual_residual < tol && dual_sign < tol && gap < tol;
  }
};

/// Throws Infeasible or Unbounded.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace arakelov
