#include "lemniscate/stability.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lemniscate/error.hpp"

namespace lemniscate {

StabilityReport perturbation_stability(const PointConfiguration& cfg, double delta, int trials,
                                       const SolverOptions& opts, std::uint64_t seed) {
  if (!(delta >= 0) || trials < 0) throw InvalidInput("perturbation_stability needs delta >= 0 and trials >= 0");
  const CriticalSet base = find_critical_points(cfg, opts);
  if (!base.local_morse) throw PreconditionFailed("perturbation_stability requires a local Morse configuration");
  StabilityReport rep;
  rep.original_h = base.h;
  rep.delta = delta;
  rep.stability_radius_estimate = std::numeric_limits<double>::infinity();
  // Moving every w_k by at most delta changes f(x) by at most delta * sum_k 2/|x - w_k|.
  auto sensitivity = [&](const Vec& x) {
    double g = 0;
    for (const auto& w : cfg.points()) g += 2.0 / (x - w).norm();
    return g;
  };
  const auto saddles = base.of_kind(CriticalKind::saddle);
  for (const auto& p : base.points) {
    if (p.kind == CriticalKind::absolute_minimum) continue;
    const double ratio = p.spectrum.cwiseAbs().minCoeff() / p.spectrum.cwiseAbs().maxCoeff();
    rep.stability_radius_estimate = std::min(rep.stability_radius_estimate, ratio * min_pole_distance(cfg, p.location));
    if (p.kind != CriticalKind::local_minimum || saddles.empty()) continue;
    const CriticalPoint* near = saddles.front();
    for (const auto* q : saddles)
      if ((q->location - p.location).norm() < (near->location - p.location).norm()) near = q;
    const double barrier = std::abs(near->value - p.value);
    const double sens = std::max(sensitivity(p.location), sensitivity(near->location));
    rep.stability_radius_estimate = std::min(rep.stability_radius_estimate, barrier / (2.0 * sens));
  }
  if (!std::isfinite(rep.stability_radius_estimate)) rep.stability_radius_estimate = cfg.min_separation();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const int N = cfg.dimension();
  for (int t = 0; t < trials; ++t) {
    std::vector<Vec> pts;
    for (const auto& w : cfg.points()) {
      Vec dir(N);
      for (int i = 0; i < N; ++i) dir(i) = nd(rng);
      const double rad = delta * std::pow(ud(rng), 1.0 / N);
      pts.push_back(delta > 0 ? Vec(w + rad * dir.normalized()) : w);
    }
    const CriticalSet set = find_critical_points(PointConfiguration(pts), opts);
    StabilityTrial tr{set.h, set.s, set.local_morse, set.global_morse};
    if (tr.h == rep.original_h) ++rep.preserved;
    if (tr.global_morse) ++rep.global_morse_count;
    rep.trials.push_back(tr);
  }
  return rep;
}

}  // namespace lemniscate
