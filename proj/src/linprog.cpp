#include "lemniscate/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace lemniscate {
namespace {

constexpr double kPivotEps = 1e-11;

struct Tableau {
  Eigen::MatrixXd T;  // rows 0..m-1 constraints, row m reduced costs; last column rhs
  std::vector<int> basis;
  int m = 0;
  int ncols = 0;  // number of variable columns

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      const double f = T(i, col);
      if (f != 0.0) T.row(i) -= f * T.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
  }

  // Runs simplex iterations on the cost row; columns >= allowed are never entered.
  LpStatus iterate(int allowed, int& budget) {
    const int rhs = ncols;
    while (true) {
      if (budget-- <= 0) return LpStatus::iteration_limit;
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (T(m, j) < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::optimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = T(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = T(i, rhs) / a;
        if (ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_standard_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c, int max_pivots) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  LpResult out;
  out.x = Eigen::VectorXd::Zero(n);

  Tableau tab;
  tab.m = m;
  tab.ncols = n + m;
  tab.T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    tab.T.row(i).head(n) = sign * A.row(i);
    tab.T(i, n + i) = 1.0;
    tab.T(i, n + m) = sign * b(i);
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }
  // Phase 1: minimize the sum of artificials.
  for (int i = 0; i < m; ++i) {
    tab.T.row(m).head(n) -= tab.T.row(i).head(n);
    tab.T(m, n + m) -= tab.T(i, n + m);
  }
  int budget = max_pivots;
  LpStatus st = tab.iterate(n + m, budget);
  if (st == LpStatus::iteration_limit) {
    out.status = st;
    return out;
  }
  const double infeas = -tab.T(m, n + m);
  if (infeas > 1e-9 * (1.0 + b.cwiseAbs().maxCoeff())) {
    out.status = LpStatus::infeasible;
    return out;
  }
  // Drive artificials out of the basis; rows where that is impossible are redundant.
  std::vector<int> keep_rows;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) {
      keep_rows.push_back(i);
      continue;
    }
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.T(i, j)) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      tab.pivot(i, col);
      keep_rows.push_back(i);
    }
  }
  Tableau p2;
  p2.m = static_cast<int>(keep_rows.size());
  p2.ncols = n;
  p2.T = Eigen::MatrixXd::Zero(p2.m + 1, n + 1);
  p2.basis.resize(keep_rows.size());
  for (int k = 0; k < p2.m; ++k) {
    const int i = keep_rows[static_cast<std::size_t>(k)];
    p2.T.row(k).head(n) = tab.T.row(i).head(n);
    p2.T(k, n) = tab.T(i, n + m);
    p2.basis[static_cast<std::size_t>(k)] = tab.basis[static_cast<std::size_t>(i)];
  }
  p2.T.row(p2.m).head(n) = c.transpose();
  for (int k = 0; k < p2.m; ++k) {
    const double cb = c(p2.basis[static_cast<std::size_t>(k)]);
    if (cb != 0.0) p2.T.row(p2.m) -= cb * p2.T.row(k);
  }
  st = p2.iterate(n, budget);
  out.status = st;
  if (st != LpStatus::optimal) return out;
  for (int k = 0; k < p2.m; ++k) {
    out.x(p2.basis[static_cast<std::size_t>(k)]) = std::max(0.0, p2.T(k, n));
  }
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace lemniscate
