#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lemniscate/solver.hpp"

namespace lemniscate {

/// start:stop:step, inclusive of stop (within rounding).
struct ParameterRange {
  double start = 0;
  double stop = 0;
  double step = 0;

  /// Throws InvalidInput on malformed or empty ranges.
  static ParameterRange parse(const std::string& text);
  std::vector<double> samples() const;
};

struct Bifurcation {
  double parameter = 0;
  int branch = -1;
  Vec location;
  double lambda_before = 0;  // smallest Hessian eigenvalue at the bracket ends
  double lambda_after = 0;
};

struct TrackingLoss {
  int branch = -1;
  double parameter = 0;
  std::string reason;
  Vec last_location;
};

struct Branch {
  int id = -1;
  std::vector<double> parameters;
  std::vector<Vec> locations;
  std::vector<double> lambda_min;
  bool lost = false;
};

struct SweepResult {
  std::vector<double> samples;
  std::vector<Branch> branches;
  std::vector<Bifurcation> bifurcations;
  std::vector<TrackingLoss> losses;
};

using ConfigurationFamily = std::function<PointConfiguration(double)>;

/// Tracks every non-pole critical point across the samples by Newton
/// continuation and reports parameters where a branch's smallest Hessian
/// eigenvalue changes sign, refined by bisection to `tol`.
SweepResult bifurcation_sweep(const ConfigurationFamily& family, const ParameterRange& range,
                              const SolverOptions& opts = {}, double tol = 1e-6);

}  // namespace lemniscate
