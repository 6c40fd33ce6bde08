#pragma once

#include <complex>
#include <vector>

namespace lemniscate {

/// Real polynomial, coefficients in ascending degree order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  /// prod (X - r_i)
  static Polynomial from_roots(const std::vector<double>& roots);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coefficients() const { return c_; }
  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;

  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;
  Polynomial operator+(double s) const;

  /// Companion-matrix eigenvalues, each polished by one Newton step.
  std::vector<std::complex<double>> roots() const;

 private:
  std::vector<double> c_{0.0};
};

}  // namespace lemniscate
