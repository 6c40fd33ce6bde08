#include "lemniscate/complex_structure.hpp"

#include <cmath>
#include <complex>

#include "lemniscate/error.hpp"

namespace lemniscate {

using cd = std::complex<double>;

ComplexStructure::ComplexStructure(Mat basis) : basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols() || basis_.rows() % 2 != 0 || basis_.rows() == 0) {
    throw InvalidInput("complex structure needs a square basis of even size");
  }
  const auto m = basis_.rows();
  if ((basis_.transpose() * basis_ - Mat::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidInput("complex structure basis is not orthonormal");
  }
}

ComplexStructure ComplexStructure::standard(int n) {
  return ComplexStructure(Mat::Identity(2 * n, 2 * n));
}

Mat ComplexStructure::J() const {
  const int m = 2 * n();
  Mat J0 = Mat::Zero(m, m);
  for (int j = 0; j < n(); ++j) {
    J0(2 * j + 1, 2 * j) = 1.0;
    J0(2 * j, 2 * j + 1) = -1.0;
  }
  return basis_ * J0 * basis_.transpose();
}

CVec ComplexStructure::coordinates(const Vec& x) const {
  const Vec y = basis_.transpose() * x;
  CVec z(n());
  for (int j = 0; j < n(); ++j) z(j) = cd(y(2 * j), y(2 * j + 1));
  return z;
}

Vec HermitianForm::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMat> es(matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Mat HessianDecomposition::reconstruct(const ComplexStructure& J) const {
  const int n = J.n();
  const int m = 2 * n;
  // Coordinates of the adapted basis vectors: a_j -> e_j, b_j -> i e_j.
  auto coord = [n](int p) {
    CVec z = CVec::Zero(n);
    z(p / 2) = (p % 2 == 0) ? cd(1, 0) : cd(0, 1);
    return z;
  };
  Mat Hp(m, m);
  for (int p = 0; p < m; ++p) {
    const CVec zp = coord(p);
    for (int q = 0; q < m; ++q) {
      const CVec zq = coord(q);
      const cd qa = (zp.transpose() * Q * zq)(0, 0);
      const cd la = (zp.transpose() * L.matrix * zq.conjugate())(0, 0);
      Hp(p, q) = 2.0 * qa.real() + 2.0 * la.real();
    }
  }
  return J.basis() * Hp * J.basis().transpose();
}

double fubini_levi(const CVec& z, const CVec& w) {
  const double z2 = z.squaredNorm();
  if (z2 == 0.0) throw InvalidInput("fubini_levi needs z != 0");
  const double v = (z2 * w.squaredNorm() - std::norm(w.dot(z))) / (z2 * z2);
  return std::max(v, 0.0);
}

HermitianForm levi_form_of_potential(const PointConfiguration& cfg, const Vec& x) {
  if (x.size() != cfg.dimension()) throw InvalidInput("point dimension mismatch");
  if (min_pole_distance(cfg, x) < 1e-12 * cfg.scale()) {
    throw PoleEvaluation("Levi form requested at a pole of the potential");
  }
  const int N = cfg.dimension();
  const int m = N + (N % 2);
  const int n = m / 2;
  auto embed = [&](const Vec& v) {
    Vec e = Vec::Zero(m);
    e.head(N) = v;
    CVec z(n);
    for (int j = 0; j < n; ++j) z(j) = cd(e(2 * j), e(2 * j + 1));
    return z;
  };
  const CVec zx = embed(x);
  HermitianForm L{CMat::Zero(n, n), x};
  for (const auto& w : cfg.points()) {
    const CVec d = zx - embed(w);
    const double s = d.squaredNorm();
    // (|d|^2 delta_jk - conj(d_j) d_k) / |d|^4
    L.matrix += (s * CMat::Identity(n, n) - d.conjugate() * d.transpose()) / (s * s);
  }
  return L;
}

HessianDecomposition decompose_hessian(const Mat& H, const ComplexStructure& J) {
  const int m = 2 * J.n();
  if (H.rows() != m || H.cols() != m) throw InvalidInput("Hessian size does not match complex structure");
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + H.cwiseAbs().maxCoeff())) {
    throw InvalidInput("decompose_hessian needs a symmetric matrix");
  }
  const Mat Hp = J.basis().transpose() * H * J.basis();
  const int n = J.n();
  HessianDecomposition out{CMat(n, n), HermitianForm{CMat(n, n), Vec()}};
  for (int j = 0; j < n; ++j) {
    const int aj = 2 * j, bj = 2 * j + 1;
    for (int k = 0; k < n; ++k) {
      const int ak = 2 * k, bk = 2 * k + 1;
      out.Q(j, k) = 0.25 * cd(Hp(aj, ak) - Hp(bj, bk), -(Hp(aj, bk) + Hp(bj, ak)));
      out.L.matrix(j, k) = 0.25 * cd(Hp(aj, ak) + Hp(bj, bk), Hp(aj, bk) - Hp(bj, ak));
    }
  }
  return out;
}

ComplexStructure adapted_structure(const Mat& H, double rel_threshold) {
  if (H.rows() != H.cols() || H.rows() % 2 != 0 || H.rows() == 0) {
    throw InvalidInput("adapted_structure needs an even-dimensional square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const Vec& lam = es.eigenvalues();
  const double thr = rel_threshold * lam.cwiseAbs().maxCoeff();
  int nonpos = 0;
  for (int i = 0; i < lam.size(); ++i) {
    if (lam(i) < thr) ++nonpos;
  }
  if (nonpos < 2) {
    throw PreconditionFailed("adapted_structure: fewer than two nonpositive eigenvalues (positivity " +
                             std::to_string(lam.size() - nonpos) + ")");
  }
  // Ascending eigenvectors already pair (v1, v2), (v3, v4), ...
  return ComplexStructure(es.eigenvectors());
}

}  // namespace lemniscate
