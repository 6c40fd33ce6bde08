#pragma once

#include <cstdint>
#include <vector>

#include "lemniscate/solver.hpp"

namespace lemniscate {

struct StabilityTrial {
  int h = 0;
  int s = 0;
  bool local_morse = false;
  bool global_morse = false;
};

struct StabilityReport {
  int original_h = 0;
  double delta = 0;
  std::vector<StabilityTrial> trials;
  int preserved = 0;           // trials with h equal to original_h
  int global_morse_count = 0;
  /// Heuristic: min over non-pole critical points of (min|lambda| / max|lambda|) times
  /// the distance to the nearest pole. Not a proven bound.
  double stability_radius_estimate = 0;
  bool all_preserved() const { return preserved == static_cast<int>(trials.size()); }
};

/// Moves every point uniformly at random inside a ball of radius delta and
/// re-solves. Requires cfg to be local Morse as computed (PreconditionFailed).
StabilityReport perturbation_stability(const PointConfiguration& cfg, double delta, int trials,
                                       const SolverOptions& opts = {}, std::uint64_t seed = 1);

}  // namespace lemniscate
