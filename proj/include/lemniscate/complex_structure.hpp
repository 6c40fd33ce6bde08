#pragma once

#include <Eigen/Dense>

#include "lemniscate/potential.hpp"

namespace lemniscate {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Orthonormal basis (a_1, b_1, ..., a_n, b_n) of R^{2n}; J a_j = b_j, J b_j = -a_j.
/// The complex coordinate along line j is z_j = <x, a_j> + i <x, b_j>.
class ComplexStructure {
 public:
  explicit ComplexStructure(Mat basis);
  static ComplexStructure standard(int n);

  int n() const { return static_cast<int>(basis_.cols() / 2); }
  const Mat& basis() const { return basis_; }
  /// The rotation J as a real 2n x 2n matrix.
  Mat J() const;
  /// Complex coordinates of a real vector.
  CVec coordinates(const Vec& x) const;

 private:
  Mat basis_;
};

struct HermitianForm {
  CMat matrix;
  Vec base_point;
  Vec eigenvalues() const;
};

struct HessianDecomposition {
  CMat Q;  // complex symmetric
  HermitianForm L;
  /// H(x, y) = 2 Re(z^T Q w) + 2 Re(z^T L conj(w)), z, w the complex coordinates of x, y.
  Mat reconstruct(const ComplexStructure& J) const;
};

/// (|z|^2 |w|^2 - |<w,z>|^2) / |z|^4, the Levi form of log|z|^2 evaluated on w.
double fubini_levi(const CVec& z, const CVec& w);

/// Levi form of f at x in the standard structure. Odd N is embedded into
/// R^{N+1} by appending a zero coordinate to x and to every w_k.
HermitianForm levi_form_of_potential(const PointConfiguration& cfg, const Vec& x);

HessianDecomposition decompose_hessian(const Mat& H, const ComplexStructure& J);

/// Pairs the two smallest eigendirections of H into one complex line, then the
/// remaining eigendirections in ascending order. Throws PreconditionFailed unless
/// at least two eigenvalues are below rel_threshold * max|lambda|.
ComplexStructure adapted_structure(const Mat& H, double rel_threshold = 1e-8);

}  // namespace lemniscate
