#include "arakelov/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "arakelov/error.hpp"

namespace arakelov {

namespace {

constexpr double kPivotEps = 1e-11;

struct Tableau {
  Eigen::MatrixXd T;  // m x (N + 1); last column is the right-hand side
  std::vector<int> basis;
  std::vector<bool> banned;  // columns that may never enter
  int iterations = 0;

  int rows() const { return static_cast<int>(T.rows()); }
  int cols() const { return static_cast<int>(T.cols()) - 1; }

  void pivot(int r, int j) {
    T.row(r) /= T(r, j);
    for (int i = 0; i < rows(); ++i) {
      if (i != r && T(i, j) != 0.0) T.row(i) -= T(i, j) * T.row(r);
    }
    basis[r] = j;
    ++iterations;
  }

  // Bland's rule. Returns false if unbounded.
  bool optimize(const Eigen::VectorXd& cost) {
    const double scale = 1.0 + cost.cwiseAbs().maxCoeff();
    for (;;) {
      if (iterations > 100000) throw Error(Errc::Infeasible, "simplex iteration limit");
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (banned[j]) continue;
        double r = cost(j);
        for (int i = 0; i < rows(); ++i) r -= cost(basis[i]) * T(i, j);
        if (r < -kPivotEps * scale) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (T(i, enter) <= kPivotEps) continue;
        double ratio = T(i, cols()) / T(i, enter);
        if (ratio < best - 1e-15 || (std::fabs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.A.rows());
  const int n = static_cast<int>(lp.A.cols());
  if (lp.b.size() != m || lp.c.size() != n) throw Error(Errc::InvalidArgument, "LP dimension mismatch");

  // Columns: x+ (n), x- (n), slacks (m), artificials (one per row with b < 0).
  std::vector<int> flip(m, 1), art_col(m, -1);
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    if (lp.b(i) < 0) {
      flip[i] = -1;
      art_col[i] = 2 * n + m + n_art++;
    }
  }
  const int N = 2 * n + m + n_art;
  Tableau tab;
  tab.T = Eigen::MatrixXd::Zero(m, N + 1);
  tab.basis.assign(m, -1);
  tab.banned.assign(N, false);
  for (int i = 0; i < m; ++i) {
    double f = flip[i];
    tab.T.block(i, 0, 1, n) = f * lp.A.row(i);
    tab.T.block(i, n, 1, n) = -f * lp.A.row(i);
    tab.T(i, 2 * n + i) = f;
    tab.T(i, N) = f * lp.b(i);
    if (art_col[i] >= 0) {
      tab.T(i, art_col[i]) = 1.0;
      tab.basis[i] = art_col[i];
    } else {
      tab.basis[i] = 2 * n + i;
    }
  }

  if (n_art > 0) {
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(N);
    for (int j = 2 * n + m; j < N; ++j) c1(j) = 1.0;
    tab.optimize(c1);
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] >= 2 * n + m) infeas += tab.T(i, N);
    }
    if (infeas > 1e-9 * (1.0 + lp.b.cwiseAbs().maxCoeff())) throw Error(Errc::Infeasible, "LP is infeasible");
    // Drive zero-level artificials out where possible; rows where that fails are redundant.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < 2 * n + m) continue;
      for (int j = 0; j < 2 * n + m; ++j) {
        if (std::fabs(tab.T(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
      }
    }
    for (int j = 2 * n + m; j < N; ++j) tab.banned[j] = true;
  }

  Eigen::VectorXd c2 = Eigen::VectorXd::Zero(N);
  c2.head(n) = lp.c;
  c2.segment(n, n) = -lp.c;
  if (!tab.optimize(c2)) throw Error(Errc::Unbounded, "LP is unbounded");

  LpResult res;
  res.iterations = tab.iterations;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(N);
  for (int i = 0; i < m; ++i) z(tab.basis[i]) = tab.T(i, N);
  res.x = z.head(n) - z.segment(n, n);
  res.value = lp.c.dot(res.x);

  // Dual: B^T pi = c_B on the (row-flipped) original columns, y = -flip * pi.
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(m, N);
  for (int i = 0; i < m; ++i) {
    double f = flip[i];
    full.block(i, 0, 1, n) = f * lp.A.row(i);
    full.block(i, n, 1, n) = -f * lp.A.row(i);
    full(i, 2 * n + i) = f;
    if (art_col[i] >= 0) full(i, art_col[i]) = 1.0;
  }
  Eigen::MatrixXd B(m, m);
  Eigen::VectorXd cB(m);
  for (int i = 0; i < m; ++i) {
    B.col(i) = full.col(tab.basis[i]);
    cB(i) = c2(tab.basis[i]);
  }
  Eigen::VectorXd pi = B.transpose().fullPivLu().solve(cB);
  res.y.resize(m);
  for (int i = 0; i < m; ++i) res.y(i) = -flip[i] * pi(i);

  Eigen::VectorXd slack = lp.A * res.x - lp.b;
  res.primal_residual = std::max(0.0, slack.size() ? slack.maxCoeff() : 0.0);
  res.dual_residual = m ? (lp.A.transpose() * res.y + lp.c).cwiseAbs().maxCoeff() : lp.c.cwiseAbs().maxCoeff();
  if (n == 0) res.dual_residual = 0.0;
  res.dual_sign = std::max(0.0, m ? -res.y.minCoeff() : 0.0);
  res.gap = std::fabs(res.value + lp.b.dot(res.y));
  return res;
}

}  // namespace arakelov
