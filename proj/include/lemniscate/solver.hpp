#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lemniscate/potential.hpp"

namespace lemniscate {

struct SolverOptions {
  double grad_tol = 1e-11;            // times max|lambda(H)| * diameter
  double dedup_radius = 1e-6;         // times diameter
  double eig_zero_threshold = 1e-8;   // times max|lambda(H)|
  int max_newton_iters = 100;
  int grid_density = 8;
  int max_grid_seeds = 4096;
  int random_seed_count = 200;
  int fixed_point_starts = 50;
  int fixed_point_iters = 50;
  std::uint64_t rng_seed = 0x5eed;
  bool saddle_pass = true;  // segment-maximum seeds between found minima

  void validate() const;
};

enum class CriticalKind { absolute_minimum, local_minimum, saddle, degenerate };

std::string to_string(CriticalKind k);

struct CriticalPoint {
  Vec location;
  double value = 0;  // -inf for absolute minima
  double grad_norm = 0;
  Vec spectrum;      // ascending; empty for absolute minima
  Mat eigenvectors;  // columns match spectrum
  int negativity = 0;
  int nullity = 0;
  int positivity = 0;
  CriticalKind kind = CriticalKind::degenerate;
  double hull_margin = 0;
};

struct Certification {
  int seeds_grid = 0;
  int seeds_random = 0;
  int seeds_fixed_point = 0;
  int seeds_pairs = 0;
  int seeds_triples = 0;
  int seeds_segment = 0;
  int converged = 0;
  int dropped = 0;
  int flagged_clusters = 0;
  double dedup_radius = 0;
  double grad_tolerance = 0;
  double max_residual = 0;
  double min_hull_margin = 0;
  double value_separation = 0;
};

struct CriticalSet {
  std::vector<CriticalPoint> points;  // poles first (input order), then by value
  int r = 0;
  int h = 0;
  int s = 0;
  int degenerate = 0;
  int span_dimension = 0;
  bool local_morse = false;
  bool global_morse = false;
  Certification certification;

  std::vector<const CriticalPoint*> of_kind(CriticalKind k) const;
};

CriticalSet find_critical_points(const PointConfiguration& cfg, const SolverOptions& opts = {});

/// Classifies a point with (near) zero gradient. Throws TheoremViolation if the
/// Hessian has positivity below N-1 (or, for span <= 2, a normal block that is
/// not positive definite).
CriticalPoint classify(const PointConfiguration& cfg, const Vec& x, const SolverOptions& opts = {});

/// x <- sum_k t_k(x) w_k, iters times. Restarts from a jittered point if an
/// iterate lands on a pole.
Vec fixed_point_iterate(const PointConfiguration& cfg, const Vec& x0, int iters, std::uint64_t jitter_seed = 1);

/// Newton refinement from x0 restricted to the affine span. nullopt if it
/// does not converge.
std::optional<Vec> refine_critical_point(const PointConfiguration& cfg, const Vec& x0,
                                         const SolverOptions& opts = {});

struct MorseVerdict {
  bool pass = false;
  int r = 0;
  int h = 0;
  int s = 0;
  int expected_s = 0;
  int span_dimension = 0;
  std::string message;
};

/// Requires set.local_morse (PreconditionFailed otherwise).
MorseVerdict morse_report(const CriticalSet& set, int span_dim);

/// Absolute gradient tolerance at x.
double gradient_tolerance(const PointConfiguration& cfg, const Mat& H, const SolverOptions& opts);

}  // namespace lemniscate
