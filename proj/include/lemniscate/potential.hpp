#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace lemniscate {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// r distinct points w_1..w_r in R^N. Immutable once built.
class PointConfiguration {
 public:
  /// Throws InvalidInput on empty input, ragged or non-finite coordinates, or
  /// two points closer than separation_rel * diameter.
  explicit PointConfiguration(std::vector<Vec> points, double separation_rel = 1e-10);

  int r() const { return static_cast<int>(points_.size()); }
  int dimension() const { return dim_; }
  const std::vector<Vec>& points() const { return points_; }
  const Vec& point(int k) const { return points_[static_cast<std::size_t>(k)]; }

  double diameter() const { return diameter_; }
  /// Length scale for relative tolerances: the diameter, or 1 for a single point.
  double scale() const { return diameter_ > 0 ? diameter_ : 1.0; }
  double min_separation() const { return min_sep_; }

  Vec bbox_min() const;
  Vec bbox_max() const;

 private:
  std::vector<Vec> points_;
  int dim_ = 0;
  double diameter_ = 0;
  double min_sep_ = 0;
};

struct PotentialValue {
  double f;  // -inf at a pole
  double F;
  Vec at;
};

PotentialValue eval(const PointConfiguration& cfg, const Vec& x);

/// f only, via a sum of logs (no overflow of the product).
double potential(const PointConfiguration& cfg, const Vec& x);

double min_pole_distance(const PointConfiguration& cfg, const Vec& x);

Vec gradient(const PointConfiguration& cfg, const Vec& x);
Mat hessian(const PointConfiguration& cfg, const Vec& x);

/// t_k proportional to 1/|x - w_k|^2, normalized to sum 1.
Vec barycentric_weights(const PointConfiguration& cfg, const Vec& x);

struct AffineSpan {
  Vec origin;  // w_1
  Mat basis;   // N x d, orthonormal columns
  int dimension() const { return static_cast<int>(basis.cols()); }
  Vec to_local(const Vec& x) const { return basis.transpose() * (x - origin); }
  Vec to_ambient(const Vec& y) const { return origin + basis * y; }
};

AffineSpan affine_span(const PointConfiguration& cfg, double rel_cutoff = 1e-9);
int affine_span_dimension(const PointConfiguration& cfg);

struct HullMembership {
  bool inside = false;
  /// Outside: minus the L1 distance to the hull. Inside: radius of a ball
  /// (relative to the affine span) certified to lie in the hull.
  double margin = 0;
  std::optional<Vec> witness_weights;
  /// False when the LP did not terminate cleanly; inside is then false.
  bool determinate = true;
};

/// tol defaults to 1e-9 * scale.
HullMembership hull_membership(const PointConfiguration& cfg, const Vec& x,
                               std::optional<double> tol = std::nullopt);

/// L1 distance from x to the hull (cheap phase of hull_membership).
/// Returns nullopt if the LP failed.
std::optional<double> hull_l1_distance(const PointConfiguration& cfg, const Vec& x);

}  // namespace lemniscate
