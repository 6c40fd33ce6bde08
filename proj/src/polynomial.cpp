#include "lemniscate/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lemniscate/error.hpp"

namespace lemniscate {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
  if (c_.empty()) c_.push_back(0.0);
}

Polynomial Polynomial::from_roots(const std::vector<double>& roots) {
  Polynomial p({1.0});
  for (double r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

double Polynomial::operator()(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return Polynomial(d);
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(c_.size() + 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
  return Polynomial(a);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<double> p(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) p[i + j] += c_[i] * o.c_[j];
  return Polynomial(p);
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> p = c_;
  for (double& v : p) v *= s;
  return Polynomial(p);
}

Polynomial Polynomial::operator+(double s) const {
  std::vector<double> p = c_;
  p[0] += s;
  return Polynomial(p);
}

std::vector<std::complex<double>> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  if (c_.back() == 0.0) throw NumericalFailure("polynomial has zero leading coefficient");
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -c_[static_cast<std::size_t>(i)] / c_.back();
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  if (es.info() != Eigen::Success) throw NumericalFailure("companion eigenvalue iteration failed");
  const Polynomial d = derivative();
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    const std::complex<double> dz = d(z);
    if (std::abs(dz) > 0) {
      const std::complex<double> z1 = z - (*this)(z) / dz;
      if (std::abs((*this)(z1)) <= std::abs((*this)(z))) z = z1;
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace lemniscate
