#pragma once

#include <Eigen/Dense>

namespace lemniscate {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  Eigen::VectorXd x;
  double objective = 0;
};

/// minimize c'x  subject to  A x = b, x >= 0.
/// Dense two-phase tableau simplex with Bland's rule; intended for the small
/// LPs of hull membership (tens of rows).
LpResult solve_standard_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c, int max_pivots = 20000);

}  // namespace lemniscate
