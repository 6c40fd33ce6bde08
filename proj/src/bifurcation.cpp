#include "lemniscate/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "lemniscate/error.hpp"

namespace lemniscate {

ParameterRange ParameterRange::parse(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw InvalidInput("bad number");
    } catch (const std::exception&) {
      throw InvalidInput("range must be start:stop:step, got '" + text + "'");
    }
  }
  if (parts.size() != 3) throw InvalidInput("range must be start:stop:step, got '" + text + "'");
  ParameterRange r{parts[0], parts[1], parts[2]};
  if (!(r.step > 0) || !(r.stop >= r.start) || !std::isfinite(r.start) || !std::isfinite(r.stop)) {
    throw InvalidInput("empty parameter range '" + text + "'");
  }
  return r;
}

std::vector<double> ParameterRange::samples() const {
  std::vector<double> out;
  const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

namespace {

double lambda_min(const PointConfiguration& cfg, const Vec& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hessian(cfg, x), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

struct Flip {
  double parameter;
  Vec location;
  double lambda_before;
  double lambda_after;
};

struct Tracked {
  std::optional<Vec> x;
  double lambda = 0;
  std::vector<Flip> flips;
};

// Follows the critical point x (at t0, smallest eigenvalue lam) to t1. A step
// is accepted when the sign of the smallest eigenvalue is unchanged and the
// point moved less than half the separation `sep` to other critical points;
// otherwise the step is halved. A sign change that persists down to `tol` is a
// bifurcation; a jump that persists is a tracking failure.
Tracked track(const ConfigurationFamily& family, const Vec& x, double lam, double t0, double t1, double sep,
              const SolverOptions& opts, double tol) {
  Tracked out;
  const PointConfiguration cfg = family(t1);
  const auto y = refine_critical_point(cfg, x, opts);
  std::optional<double> ly;
  if (y) ly = lambda_min(cfg, *y);
  const bool near = y && (*y - x).norm() <= 0.5 * sep;
  const bool same_sign = ly && ((*ly > 0) == (lam > 0));
  if (near && same_sign) {
    out.x = y;
    out.lambda = *ly;
    return out;
  }
  if (t1 - t0 <= tol) {
    if (near) {
      out.x = y;
      out.lambda = *ly;
      out.flips.push_back({0.5 * (t0 + t1), x, lam, *ly});
    }
    return out;
  }
  const double mid = 0.5 * (t0 + t1);
  Tracked a = track(family, x, lam, t0, mid, sep, opts, tol);
  if (!a.x) return a;
  Tracked b = track(family, *a.x, a.lambda, mid, t1, sep, opts, tol);
  a.flips.insert(a.flips.end(), b.flips.begin(), b.flips.end());
  b.flips = std::move(a.flips);
  return b;
}

}  // namespace

SweepResult bifurcation_sweep(const ConfigurationFamily& family, const ParameterRange& range,
                              const SolverOptions& opts, double tol) {
  SweepResult out;
  out.samples = range.samples();
  if (out.samples.empty()) throw InvalidInput("empty parameter range");

  std::vector<Vec> prev_points;  // all critical points, poles included, at the previous sample
  double prev_match = 0;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const double a = out.samples[i];
    const PointConfiguration cfg = family(a);
    const CriticalSet set = find_critical_points(cfg, opts);
    std::vector<const CriticalPoint*> pts;
    for (const auto& p : set.points)
      if (p.kind != CriticalKind::absolute_minimum) pts.push_back(&p);
    const double match_radius = 10.0 * set.certification.dedup_radius + 1e-9 * cfg.scale();

    struct Step {
      int branch;
      Vec x;
      double jump;
      int match;  // index into pts or -1
      double lambda;
    };
    std::vector<Step> steps;
    std::vector<std::vector<Flip>> flips(out.branches.size());
    for (auto& b : out.branches) {
      if (b.lost) continue;
      const Vec& prev = b.locations.back();
      double sep = std::numeric_limits<double>::infinity();
      for (const auto& q : prev_points)
        if ((q - prev).norm() > prev_match) sep = std::min(sep, (q - prev).norm());
      auto tr = track(family, prev, b.lambda_min.back(), b.parameters.back(), a, sep, opts, tol);
      if (!tr.x) {
        b.lost = true;
        out.losses.push_back({b.id, a, "continuation did not converge", prev});
        continue;
      }
      const Vec x = *tr.x;
      const double jump = (x - prev).norm();
      if (b.locations.size() >= 3) {
        std::vector<double> jumps;
        for (std::size_t k = 1; k < b.locations.size(); ++k)
          jumps.push_back((b.locations[k] - b.locations[k - 1]).norm());
        const double lim = 10.0 * std::max(median(jumps), 1e-3 * cfg.scale());
        if (jump > lim) {
          b.lost = true;
          out.losses.push_back({b.id, a, "jump exceeds 10x median step", prev});
          continue;
        }
      }
      int match = -1;
      for (std::size_t j = 0; j < pts.size(); ++j)
        if ((pts[j]->location - x).norm() <= match_radius) match = static_cast<int>(j);
      flips[static_cast<std::size_t>(b.id)] = std::move(tr.flips);
      steps.push_back({b.id, x, jump, match, tr.lambda});
    }
    // Two branches converging to one point: the smaller jump keeps it.
    std::vector<bool> claimed(pts.size(), false);
    std::vector<bool> drop(steps.size(), false);
    for (std::size_t u = 0; u < steps.size(); ++u) {
      for (std::size_t v = 0; v < steps.size(); ++v) {
        if (u == v) continue;
        const bool same = (steps[u].x - steps[v].x).norm() <= match_radius;
        if (same && (steps[v].jump < steps[u].jump || (steps[v].jump == steps[u].jump && v < u))) drop[u] = true;
      }
    }
    for (std::size_t u = 0; u < steps.size(); ++u) {
      Branch& b = out.branches[static_cast<std::size_t>(steps[u].branch)];
      if (drop[u]) {
        b.lost = true;
        out.losses.push_back({b.id, a, "merged into another branch", b.locations.back()});
        continue;
      }
      if (steps[u].match >= 0) claimed[static_cast<std::size_t>(steps[u].match)] = true;
      const double lam = steps[u].lambda;
      for (const auto& f : flips[static_cast<std::size_t>(b.id)])
        out.bifurcations.push_back({f.parameter, b.id, f.location, f.lambda_before, f.lambda_after});
      b.parameters.push_back(a);
      b.locations.push_back(steps[u].x);
      b.lambda_min.push_back(lam);
    }
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (claimed[j]) continue;
      Branch nb;
      nb.id = static_cast<int>(out.branches.size());
      nb.parameters.push_back(a);
      nb.locations.push_back(pts[j]->location);
      nb.lambda_min.push_back(pts[j]->spectrum(0));
      out.branches.push_back(std::move(nb));
    }
    prev_points.clear();
    for (const auto& p : set.points) prev_points.push_back(p.location);
    prev_match = match_radius;
  }
  return out;
}

}  // namespace lemniscate
