#include "lemniscate/potential.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lemniscate/error.hpp"
#include "lemniscate/linprog.hpp"

namespace lemniscate {

PointConfiguration::PointConfiguration(std::vector<Vec> points, double separation_rel)
    : points_(std::move(points)) {
  if (points_.empty()) throw InvalidInput("configuration needs at least one point");
  dim_ = static_cast<int>(points_.front().size());
  if (dim_ < 1) throw InvalidInput("ambient dimension must be at least 1");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (points_[k].size() != dim_) {
      std::ostringstream os;
      os << "point " << k << " has " << points_[k].size() << " coordinates, expected " << dim_;
      throw InvalidInput(os.str());
    }
    if (!points_[k].allFinite()) throw InvalidInput("non-finite coordinate in point " + std::to_string(k));
  }
  min_sep_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      const double d = (points_[i] - points_[j]).norm();
      diameter_ = std::max(diameter_, d);
      min_sep_ = std::min(min_sep_, d);
    }
  }
  if (points_.size() > 1 && min_sep_ <= separation_rel * diameter_) {
    throw InvalidInput("configuration has coincident points (minimum separation " +
                       std::to_string(min_sep_) + ")");
  }
}

Vec PointConfiguration::bbox_min() const {
  Vec lo = points_.front();
  for (const auto& p : points_) lo = lo.cwiseMin(p);
  return lo;
}

Vec PointConfiguration::bbox_max() const {
  Vec hi = points_.front();
  for (const auto& p : points_) hi = hi.cwiseMax(p);
  return hi;
}

namespace {

void check_dim(const PointConfiguration& cfg, const Vec& x) {
  if (x.size() != cfg.dimension()) {
    throw InvalidInput("point has dimension " + std::to_string(x.size()) + ", configuration has " +
                       std::to_string(cfg.dimension()));
  }
}

void pole_guard(const PointConfiguration& cfg, const Vec& x) {
  check_dim(cfg, x);
  if (min_pole_distance(cfg, x) < 1e-12 * cfg.scale()) {
    throw PoleEvaluation("derivative requested at a pole of the potential");
  }
}

}  // namespace

PotentialValue eval(const PointConfiguration& cfg, const Vec& x) {
  check_dim(cfg, x);
  PotentialValue v{0.0, 1.0, x};
  for (const auto& w : cfg.points()) {
    const double d2 = (x - w).squaredNorm();
    v.F *= d2;
    if (d2 == 0.0) {
      v.f = -std::numeric_limits<double>::infinity();
    } else if (std::isfinite(v.f)) {
      v.f += std::log(d2);
    }
  }
  if (v.f == -std::numeric_limits<double>::infinity()) v.F = 0.0;
  return v;
}

double potential(const PointConfiguration& cfg, const Vec& x) {
  double f = 0;
  for (const auto& w : cfg.points()) f += std::log((x - w).squaredNorm());
  return f;
}

double min_pole_distance(const PointConfiguration& cfg, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : cfg.points()) best = std::min(best, (x - w).norm());
  return best;
}

Vec gradient(const PointConfiguration& cfg, const Vec& x) {
  pole_guard(cfg, x);
  Vec g = Vec::Zero(x.size());
  for (const auto& w : cfg.points()) {
    const Vec d = x - w;
    g += (2.0 / d.squaredNorm()) * d;
  }
  return g;
}

Mat hessian(const PointConfiguration& cfg, const Vec& x) {
  pole_guard(cfg, x);
  const auto n = x.size();
  Mat H = Mat::Zero(n, n);
  for (const auto& w : cfg.points()) {
    const Vec d = x - w;
    const double s = d.squaredNorm();
    const double c = 4.0 / (s * s);
    for (Eigen::Index i = 0; i < n; ++i) {
      H(i, i) += 2.0 / s - c * (d(i) * d(i));
      for (Eigen::Index j = i + 1; j < n; ++j) H(i, j) -= c * (d(i) * d(j));
    }
  }
  // Mirror so that H is symmetric bit for bit.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) H(j, i) = H(i, j);
  return H;
}

Vec barycentric_weights(const PointConfiguration& cfg, const Vec& x) {
  pole_guard(cfg, x);
  Vec t(cfg.r());
  for (int k = 0; k < cfg.r(); ++k) t(k) = 1.0 / (x - cfg.point(k)).squaredNorm();
  return t / t.sum();
}

AffineSpan affine_span(const PointConfiguration& cfg, double rel_cutoff) {
  AffineSpan span;
  span.origin = cfg.point(0);
  const int n = cfg.dimension();
  if (cfg.r() == 1) {
    span.basis = Mat::Zero(n, 0);
    return span;
  }
  Mat D(n, cfg.r() - 1);
  for (int k = 1; k < cfg.r(); ++k) D.col(k - 1) = cfg.point(k) - cfg.point(0);
  Eigen::JacobiSVD<Mat> svd(D, Eigen::ComputeThinU);
  const Vec& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_cutoff * sv(0)) ++rank;
  }
  span.basis = svd.matrixU().leftCols(rank);
  return span;
}

int affine_span_dimension(const PointConfiguration& cfg) { return affine_span(cfg).dimension(); }

std::optional<double> hull_l1_distance(const PointConfiguration& cfg, const Vec& x) {
  check_dim(cfg, x);
  const int r = cfg.r();
  const int n = cfg.dimension();
  // variables: t (r), e+ (n), e- (n)
  Mat A = Mat::Zero(n + 1, r + 2 * n);
  Vec b(n + 1);
  for (int k = 0; k < r; ++k) {
    A.block(0, k, n, 1) = cfg.point(k);
    A(n, k) = 1.0;
  }
  A.block(0, r, n, n) = Mat::Identity(n, n);
  A.block(0, r + n, n, n) = -Mat::Identity(n, n);
  b.head(n) = x;
  b(n) = 1.0;
  Vec c = Vec::Zero(r + 2 * n);
  c.tail(2 * n).setOnes();
  const LpResult res = solve_standard_lp(A, b, c);
  if (res.status != LpStatus::optimal) return std::nullopt;
  return res.objective;
}

HullMembership hull_membership(const PointConfiguration& cfg, const Vec& x, std::optional<double> tol) {
  check_dim(cfg, x);
  const double eps = tol.value_or(1e-9 * cfg.scale());
  const int r = cfg.r();
  const int n = cfg.dimension();
  HullMembership out;

  Mat A = Mat::Zero(n + 1, r + 2 * n);
  Vec b(n + 1);
  for (int k = 0; k < r; ++k) {
    A.block(0, k, n, 1) = cfg.point(k);
    A(n, k) = 1.0;
  }
  A.block(0, r, n, n) = Mat::Identity(n, n);
  A.block(0, r + n, n, n) = -Mat::Identity(n, n);
  b.head(n) = x;
  b(n) = 1.0;
  Vec c = Vec::Zero(r + 2 * n);
  c.tail(2 * n).setOnes();
  const LpResult l1 = solve_standard_lp(A, b, c);
  if (l1.status != LpStatus::optimal) {
    out.determinate = false;
    return out;
  }
  if (l1.objective > eps) {
    out.margin = -l1.objective;
    return out;
  }
  out.inside = true;
  Vec t = l1.x.head(r);
  out.witness_weights = t / t.sum();

  // Depth: largest rho with x +- rho*u_j in the hull for an orthonormal frame
  // u_1..u_d of the affine span (a cross-polytope; inscribed radius rho/sqrt(d)).
  const AffineSpan span = affine_span(cfg);
  const int d = span.dimension();
  if (d == 0) {
    out.margin = 0;
    return out;
  }
  const Vec y = span.to_local(x);
  Mat W(d, r);
  for (int k = 0; k < r; ++k) W.col(k) = span.to_local(cfg.point(k));
  const int blocks = 2 * d;
  const int nvar = blocks * r + 1;
  Mat B = Mat::Zero(blocks * (d + 1), nvar);
  Vec rhs(blocks * (d + 1));
  for (int blk = 0; blk < blocks; ++blk) {
    const int axis = blk / 2;
    const double sgn = (blk % 2 == 0) ? 1.0 : -1.0;
    const int row0 = blk * (d + 1);
    B.block(row0, blk * r, d, r) = W;
    B.block(row0 + d, blk * r, 1, r).setOnes();
    // sum t w - sgn*rho*e_axis = y
    B(row0 + axis, nvar - 1) = -sgn;
    rhs.segment(row0, d) = y;
    rhs(row0 + d) = 1.0;
  }
  Vec cost = Vec::Zero(nvar);
  cost(nvar - 1) = -1.0;
  const LpResult depth = solve_standard_lp(B, rhs, cost);
  if (depth.status == LpStatus::optimal) {
    out.margin = depth.x(nvar - 1) / std::sqrt(static_cast<double>(d));
  } else if (depth.status == LpStatus::infeasible) {
    // x sits on the relative boundary within eps: rho = 0 is the only option
    // and rounding excluded it.
    out.margin = -l1.objective;
  } else {
    out.determinate = false;
    out.inside = false;
  }
  return out;
}

}  // namespace lemniscate
