#include "lemniscate/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "lemniscate/error.hpp"

namespace lemniscate {

void SolverOptions::validate() const {
  if (!(grad_tol > 0) || !(dedup_radius > 0) || !(eig_zero_threshold > 0)) {
    throw InvalidInput("solver tolerances must be positive");
  }
  if (max_newton_iters < 1 || grid_density < 1 || random_seed_count < 0 || fixed_point_starts < 0 ||
      fixed_point_iters < 0 || max_grid_seeds < 1) {
    throw InvalidInput("solver iteration counts out of range");
  }
}

std::string to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::absolute_minimum: return "absolute_minimum";
    case CriticalKind::local_minimum: return "local_minimum";
    case CriticalKind::saddle: return "saddle";
    case CriticalKind::degenerate: return "degenerate";
  }
  return "unknown";
}

std::vector<const CriticalPoint*> CriticalSet::of_kind(CriticalKind k) const {
  std::vector<const CriticalPoint*> out;
  for (const auto& p : points)
    if (p.kind == k) out.push_back(&p);
  return out;
}

double gradient_tolerance(const PointConfiguration& cfg, const Mat& H, const SolverOptions& opts) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  return opts.grad_tol * es.eigenvalues().cwiseAbs().maxCoeff() * cfg.scale();
}

namespace {

struct Box {
  Vec lo, hi;
  bool contains(const Vec& y) const {
    return (y.array() >= lo.array()).all() && (y.array() <= hi.array()).all();
  }
};

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

// Newton on grad f = 0 with backtracking on |grad f|^2; iterates stay in `box`.
std::optional<Vec> newton(const PointConfiguration& L, const Vec& y0, const Box& box, const SolverOptions& opts) {
  const double diam = L.scale();
  // A critical point at distance delta from w_j needs 2/delta <= sum_k 2/(|w_j - w_k| - delta),
  // hence delta >= min_sep / r; nothing is lost by excluding half of that.
  const double pole_eps = L.r() > 1 ? 0.5 * L.min_separation() / L.r() : 1e-12 * diam;
  auto admissible = [&](const Vec& y) { return box.contains(y) && min_pole_distance(L, y) >= pole_eps; };
  if (!admissible(y0)) return std::nullopt;
  Vec y = y0;
  Vec g = gradient(L, y);
  Mat H = hessian(L, y);
  for (int it = 0; it < opts.max_newton_iters; ++it) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const Vec& lam = es.eigenvalues();
    const double lmax = lam.cwiseAbs().maxCoeff();
    const double tol = opts.grad_tol * lmax * diam;
    Vec step = Vec::Zero(y.size());
    for (int i = 0; i < lam.size(); ++i) {
      if (std::abs(lam(i)) > 1e-14 * lmax) {
        const Vec v = es.eigenvectors().col(i);
        step -= (v.dot(g) / lam(i)) * v;
      }
    }
    const double gn = g.norm();
    if (gn <= tol && step.norm() <= 1e-14 * diam) return y;
    const double phi = gn * gn;
    bool accepted = false;
    auto try_dir = [&](const Vec& dir, double alpha) {
      for (int k = 0; k < 50 && !accepted; ++k, alpha *= 0.5) {
        const Vec yn = y + alpha * dir;
        if (!admissible(yn)) continue;
        const Vec gn2 = gradient(L, yn);
        if (gn2.squaredNorm() < phi) {
          y = yn;
          g = gn2;
          accepted = true;
        }
      }
    };
    try_dir(step, 1.0);
    if (!accepted) {
      const Vec dir = -(H * g);
      const double dn = dir.norm();
      if (dn > 0) try_dir(dir, std::min(1.0, 0.1 * diam / dn));
    }
    if (!accepted) {
      if (gn <= tol) return y;
      return std::nullopt;
    }
    H = hessian(L, y);
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  if (g.norm() <= opts.grad_tol * es.eigenvalues().cwiseAbs().maxCoeff() * diam) return y;
  return std::nullopt;
}

Vec dirichlet_combination(const std::vector<Vec>& W, std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  Vec t(static_cast<Eigen::Index>(W.size()));
  for (Eigen::Index k = 0; k < t.size(); ++k) t(k) = ex(rng);
  t /= t.sum();
  Vec y = Vec::Zero(W.front().size());
  for (std::size_t k = 0; k < W.size(); ++k) y += t(static_cast<Eigen::Index>(k)) * W[k];
  return y;
}

struct SpanProblem {
  AffineSpan span;
  std::optional<PointConfiguration> local;
  Box box;
};

SpanProblem make_span_problem(const PointConfiguration& cfg) {
  SpanProblem sp{affine_span(cfg), std::nullopt, {}};
  if (sp.span.dimension() == 0) return sp;
  std::vector<Vec> loc;
  for (const auto& w : cfg.points()) loc.push_back(sp.span.to_local(w));
  sp.local.emplace(loc, 0.0);
  const double infl = 1e-6 * cfg.scale();
  sp.box.lo = sp.local->bbox_min().array() - infl;
  sp.box.hi = sp.local->bbox_max().array() + infl;
  return sp;
}

// Local maxima of f along the open segment a-b, refined by golden section.
std::vector<Vec> segment_maxima(const PointConfiguration& L, const Vec& a, const Vec& b) {
  std::vector<double> ts;
  for (int k = 0; k <= 24; ++k) {
    const double t = std::pow(10.0, -6.0 + 5.0 * k / 24.0);  // 1e-6 .. 0.1
    ts.push_back(t);
    ts.push_back(1.0 - t);
  }
  for (int k = 1; k < 64; ++k) ts.push_back(k / 64.0);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  auto f_at = [&](double t) {
    const Vec x = a + t * (b - a);
    if (min_pole_distance(L, x) < 1e-12 * L.scale()) return -std::numeric_limits<double>::infinity();
    return potential(L, x);
  };
  std::vector<double> fs;
  for (double t : ts) fs.push_back(f_at(t));
  std::vector<Vec> out;
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (!(fs[i] >= fs[i - 1] && fs[i] >= fs[i + 1])) continue;
    double lo = ts[i - 1], hi = ts[i + 1];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f_at(x1), f2 = f_at(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
      if (f1 > f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = f_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = f_at(x2);
      }
    }
    out.push_back(a + 0.5 * (lo + hi) * (b - a));
  }
  return out;
}

bool is_local_min_local(const PointConfiguration& L, const Vec& y) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hessian(L, y), Eigen::EigenvaluesOnly);
  const Vec& lam = es.eigenvalues();
  return lam(0) > 1e-8 * lam.cwiseAbs().maxCoeff();
}

}  // namespace

Vec fixed_point_iterate(const PointConfiguration& cfg, const Vec& x0, int iters, std::uint64_t jitter_seed) {
  if (x0.size() != cfg.dimension()) throw InvalidInput("point dimension mismatch");
  const double eps = 1e-12 * cfg.scale();
  if (min_pole_distance(cfg, x0) < eps) throw PoleEvaluation("fixed_point_iterate started at a pole");
  std::mt19937_64 rng(jitter_seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec x = x0;
  for (int i = 0; i < iters; ++i) {
    Vec t = barycentric_weights(cfg, x);
    Vec nx = Vec::Zero(x.size());
    for (int k = 0; k < cfg.r(); ++k) nx += t(k) * cfg.point(k);
    int guard = 0;
    while (min_pole_distance(cfg, nx) < eps && guard++ < 100) {
      Vec jit(nx.size());
      for (Eigen::Index j = 0; j < jit.size(); ++j) jit(j) = nd(rng);
      // stay a convex combination: pull toward the centroid by a tiny amount
      Vec centroid = Vec::Zero(nx.size());
      for (const auto& w : cfg.points()) centroid += w / cfg.r();
      nx = nx + 1e-6 * (centroid - nx) + 1e-9 * cfg.scale() * jit;
    }
    x = nx;
  }
  return x;
}

std::optional<Vec> refine_critical_point(const PointConfiguration& cfg, const Vec& x0, const SolverOptions& opts) {
  if (x0.size() != cfg.dimension()) throw InvalidInput("point dimension mismatch");
  const SpanProblem sp = make_span_problem(cfg);
  if (!sp.local) return std::nullopt;
  auto y = newton(*sp.local, sp.span.to_local(x0), sp.box, opts);
  if (!y) return std::nullopt;
  return sp.span.to_ambient(*y);
}

CriticalPoint classify(const PointConfiguration& cfg, const Vec& x, const SolverOptions& opts) {
  const Mat H = hessian(cfg, x);
  const Vec g = gradient(cfg, x);
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  CriticalPoint cp;
  cp.location = x;
  cp.value = potential(cfg, x);
  cp.grad_norm = g.norm();
  cp.spectrum = es.eigenvalues();
  cp.eigenvectors = es.eigenvectors();
  const double lmax = cp.spectrum.cwiseAbs().maxCoeff();
  if (cp.grad_norm > 1e-6 * lmax * cfg.scale()) {
    throw PreconditionFailed("classify: gradient norm " + std::to_string(cp.grad_norm) + " is not near zero");
  }
  const double eps = opts.eig_zero_threshold * lmax;
  for (int i = 0; i < cp.spectrum.size(); ++i) {
    const double l = cp.spectrum(i);
    if (l < -eps) ++cp.negativity;
    else if (l > eps) ++cp.positivity;
    else ++cp.nullity;
  }
  const int N = cfg.dimension();
  if (cp.positivity < N - 1) {
    std::ostringstream os;
    os << "Hessian positivity " << cp.positivity << " < N-1 = " << N - 1 << " at a critical point";
    throw TheoremViolation(os.str());
  }
  const AffineSpan span = affine_span(cfg);
  const int d = span.dimension();
  if (d <= 2 && d < N) {
    // Normal block must be positive definite.
    Eigen::JacobiSVD<Mat> svd(span.basis, Eigen::ComputeFullU);
    const Mat V = svd.matrixU().rightCols(N - d);
    Eigen::SelfAdjointEigenSolver<Mat> nes(V.transpose() * H * V, Eigen::EigenvaluesOnly);
    if (nes.eigenvalues()(0) <= eps) throw TheoremViolation("normal Hessian block is not positive definite");
  }
  if (cp.nullity > 0) cp.kind = CriticalKind::degenerate;
  else if (cp.negativity == 0) cp.kind = CriticalKind::local_minimum;
  else cp.kind = CriticalKind::saddle;
  return cp;
}

CriticalSet find_critical_points(const PointConfiguration& cfg, const SolverOptions& opts) {
  opts.validate();
  CriticalSet set;
  set.r = cfg.r();
  const double diam = cfg.scale();
  auto& cert = set.certification;
  cert.dedup_radius = opts.dedup_radius * diam;
  cert.min_hull_margin = std::numeric_limits<double>::infinity();

  for (const auto& w : cfg.points()) {
    CriticalPoint p;
    p.location = w;
    p.value = -std::numeric_limits<double>::infinity();
    p.kind = CriticalKind::absolute_minimum;
    set.points.push_back(p);
  }

  const SpanProblem sp = make_span_problem(cfg);
  set.span_dimension = sp.span.dimension();
  const int d = set.span_dimension;
  std::vector<Vec> found;  // local coordinates

  if (sp.local) {
    const PointConfiguration& L = *sp.local;
    std::mt19937_64 rng(opts.rng_seed);
    std::vector<Vec> W = L.points();
    const double hull_eps = 1e-9 * diam;

    std::vector<Vec> seeds;
    // (a) grid over the span bounding box, filtered by hull membership
    int g = opts.grid_density;
    while (g > 1 && std::pow(double(g), d) > opts.max_grid_seeds) --g;
    const Vec lo = L.bbox_min(), hi = L.bbox_max();
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    const long total = static_cast<long>(std::llround(std::pow(double(g), d)));
    for (long n = 0; n < total; ++n) {
      long m = n;
      Vec y(d);
      for (int a = 0; a < d; ++a) {
        const int i = static_cast<int>(m % g);
        m /= g;
        y(a) = lo(a) + (i + 0.5) / g * (hi(a) - lo(a));
      }
      auto dist = hull_l1_distance(L, y);
      if (dist && *dist <= hull_eps) {
        seeds.push_back(y);
        ++cert.seeds_grid;
      }
    }
    // (b) random convex combinations
    for (int k = 0; k < opts.random_seed_count; ++k) {
      seeds.push_back(dirichlet_combination(W, rng));
      ++cert.seeds_random;
    }
    // (c) fixed-point iterates
    for (int k = 0; k < opts.fixed_point_starts; ++k) {
      Vec y0 = dirichlet_combination(W, rng);
      if (min_pole_distance(L, y0) < 1e-12 * diam) continue;
      seeds.push_back(fixed_point_iterate(L, y0, opts.fixed_point_iters, opts.rng_seed + k));
      ++cert.seeds_fixed_point;
    }
    // (d) pair midpoints, triple centroids
    const int r = L.r();
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        seeds.push_back(0.5 * (W[i] + W[j]));
        ++cert.seeds_pairs;
      }
    for (int i = 0; i < r && cert.seeds_triples < 2000; ++i)
      for (int j = i + 1; j < r && cert.seeds_triples < 2000; ++j)
        for (int k = j + 1; k < r && cert.seeds_triples < 2000; ++k) {
          seeds.push_back((W[i] + W[j] + W[k]) / 3.0);
          ++cert.seeds_triples;
        }

    auto run = [&](const std::vector<Vec>& ss) {
      for (const auto& s : ss) {
        auto y = newton(L, s, sp.box, opts);
        if (y) {
          found.push_back(*y);
          ++cert.converged;
        } else {
          ++cert.dropped;
        }
      }
    };
    run(seeds);

    if (opts.saddle_pass && r >= 2) {
      // Saddles separate basins: seed from maxima along segments joining minima.
      std::vector<Vec> anchors = W;
      for (const auto& y : found) {
        if (!is_local_min_local(L, y)) continue;
        bool dup = false;
        for (const auto& a : anchors) dup = dup || (a - y).norm() <= cert.dedup_radius;
        if (!dup) anchors.push_back(y);
      }
      std::vector<Vec> extra;
      for (std::size_t i = 0; i < anchors.size(); ++i)
        for (std::size_t j = i + 1; j < anchors.size(); ++j)
          for (auto& y : segment_maxima(L, anchors[i], anchors[j])) extra.push_back(y);
      cert.seeds_segment = static_cast<int>(extra.size());
      run(extra);
    }
  }

  // Deterministic reduction: sort by value then location, greedy merge.
  struct Cand {
    Vec x;
    double f;
  };
  std::vector<Cand> cands;
  for (const auto& y : found) {
    const Vec x = sp.span.to_ambient(y);
    cands.push_back({x, potential(cfg, x)});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.f != b.f) return a.f < b.f;
    return lex_less(a.x, b.x);
  });
  std::vector<Vec> unique;
  for (const auto& c : cands) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : unique) best = std::min(best, (u - c.x).norm());
    if (best <= cert.dedup_radius) continue;
    if (best <= 10.0 * cert.dedup_radius) {
      ++cert.flagged_clusters;
      continue;
    }
    unique.push_back(c.x);
  }

  for (const auto& x : unique) {
    CriticalPoint cp = classify(cfg, x, opts);
    const HullMembership hm = hull_membership(cfg, x);
    if (!hm.determinate) throw NumericalFailure("hull membership LP failed at a critical point");
    if (hm.margin < -1e-9 * diam) {
      throw TheoremViolation("critical point outside the convex hull (margin " + std::to_string(hm.margin) + ")");
    }
    cp.hull_margin = hm.margin;
    cert.min_hull_margin = std::min(cert.min_hull_margin, hm.margin);
    cert.max_residual = std::max(cert.max_residual, cp.grad_norm);
    cert.grad_tolerance = std::max(cert.grad_tolerance, gradient_tolerance(cfg, hessian(cfg, x), opts));
    switch (cp.kind) {
      case CriticalKind::local_minimum: ++set.h; break;
      case CriticalKind::saddle: ++set.s; break;
      default: ++set.degenerate; break;
    }
    set.points.push_back(std::move(cp));
  }
  if (unique.empty()) cert.min_hull_margin = 0;

  set.local_morse = set.degenerate == 0 && cert.flagged_clusters == 0;
  std::vector<double> vals;
  for (const auto& p : set.points)
    if (p.kind != CriticalKind::absolute_minimum) vals.push_back(p.value);
  std::sort(vals.begin(), vals.end());
  double spread = vals.empty() ? 0.0 : vals.back() - vals.front();
  cert.value_separation = 1e-9 * std::max(spread, 1.0);
  bool distinct = true;
  for (std::size_t i = 1; i < vals.size(); ++i) distinct = distinct && (vals[i] - vals[i - 1] > cert.value_separation);
  set.global_morse = set.local_morse && distinct;
  return set;
}

MorseVerdict morse_report(const CriticalSet& set, int span_dim) {
  if (!set.local_morse) throw PreconditionFailed("morse_report requires a local Morse critical set");
  MorseVerdict v;
  v.r = set.r;
  v.h = set.h;
  v.s = set.s;
  v.span_dimension = span_dim;
  std::ostringstream os;
  if (span_dim >= 3) {
    v.expected_s = set.r + set.h - 1;
    v.pass = set.s == v.expected_s;
    os << "span " << span_dim << ": s = " << set.s << ", r + h - 1 = " << v.expected_s;
  } else {
    v.expected_s = set.r - 1;
    v.pass = set.s == v.expected_s && set.h == 0;
    os << "span " << span_dim << ": s = " << set.s << " (expected " << v.expected_s << "), h = " << set.h
       << " (expected 0)";
  }
  if (!v.pass) {
    os << "; inventory:";
    for (const auto& p : set.points) {
      if (p.kind == CriticalKind::absolute_minimum) continue;
      os << " [" << to_string(p.kind) << " f=" << p.value << " at";
      for (int i = 0; i < p.location.size(); ++i) os << ' ' << p.location(i);
      os << ']';
    }
  }
  v.message = os.str();
  return v;
}

}  // namespace lemniscate
