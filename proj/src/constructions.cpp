#include "lemniscate/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lemniscate/error.hpp"

namespace lemniscate {
namespace {

Vec e(int N, int i) { return Vec::Unit(N, i); }

Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

std::vector<Vec> prism_layer(double radius, double height) {
  std::vector<Vec> out;
  for (int j = 1; j <= 3; ++j) {
    const double t = 2.0 * std::numbers::pi * j / 3.0;
    out.push_back(v3(radius * std::cos(t), radius * std::sin(t), height));
  }
  return out;
}

}  // namespace

Construction hypercube_midpoints(int N) {
  if (N < 3) throw InvalidInput("hypercube_midpoints requires N >= 3");
  std::vector<Vec> pts;
  for (int i = 0; i < N; ++i) {
    pts.push_back(e(N, i));
    pts.push_back(-e(N, i));
  }
  Construction c{"hypercube_midpoints", {{"n", {double(N)}}}, PointConfiguration(pts), {}};
  const double rad = std::sqrt((N - 2.0) / N);
  c.reference.local_minima.push_back(Vec::Zero(N));
  for (int i = 0; i < N; ++i) {
    c.reference.saddles.push_back(rad * e(N, i));
    c.reference.saddles.push_back(-rad * e(N, i));
  }
  c.reference.h = 1;
  c.reference.saddle_count = 2 * N;
  c.reference.scalars["saddle_radius"] = rad;
  c.reference.scalars["saddle_axial_hessian"] = -2.0 * N * N * (N - 2.0) / (N - 1.0);
  return c;
}

Construction simplex_vertices(int N) {
  if (N < 4) throw InvalidInput("simplex_vertices requires N >= 4");
  std::vector<Vec> pts;
  for (int i = 0; i < N; ++i) pts.push_back(e(N, i));
  Construction c{"simplex", {{"n", {double(N)}}}, PointConfiguration(pts), {}};
  const Vec B = Vec::Constant(N, 1.0 / N);
  c.reference.local_minima.push_back(B);
  for (int i = 0; i < N; ++i) {
    c.reference.saddles.push_back((2.0 / (N - 1)) * B + ((N - 3.0) / (N - 1)) * e(N, i));
  }
  c.reference.h = 1;
  c.reference.saddle_count = N;
  const double n = N;
  auto& s = c.reference.scalars;
  s["B_eig_parallel"] = 2 * n * n * n / (n * (n - 1));
  s["B_eig_orthogonal"] = 2 * (n - 3) * (n / (n - 1)) * (n / (n - 1));
  s["Q_eig_negative"] = -(n - 3) * n * n / (2 * (n - 2));
  s["Q_eig_parallel_B"] = (n - 1) * n * n / (2 * (n - 2));
  s["Q_eig_remaining"] = (8 + (n - 3) * n * (4 + n * n)) / (2 * (n - 2) * (n - 2));
  return c;
}

Construction tetrahedron() {
  std::vector<Vec> pts{v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1), v3(1, 1, 1)};
  Construction c{"tetrahedron", {}, PointConfiguration(pts), {}};
  const Vec B = v3(0.5, 0.5, 0.5);
  c.reference.local_minima.push_back(B);
  for (const auto& w : pts) c.reference.saddles.push_back(w / 3.0 + 2.0 * B / 3.0);
  c.reference.h = 1;
  c.reference.saddle_count = 4;
  return c;
}

Construction cube() {
  std::vector<Vec> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(v3(i & 1, (i >> 1) & 1, (i >> 2) & 1));
  Construction c{"cube", {}, PointConfiguration(pts), {}};
  c.reference.local_minima.push_back(v3(0.5, 0.5, 0.5));
  c.reference.h = 1;
  c.reference.saddle_count = 8;
  return c;
}

Construction octa_six() {
  std::vector<Vec> pts{v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1), v3(1, 1, 0), v3(1, 0, 1), v3(0, 1, 1)};
  Construction c{"octa_six", {}, PointConfiguration(pts), {}};
  c.reference.local_minima.push_back(v3(0.5, 0.5, 0.5));
  c.reference.h = 1;
  c.reference.saddle_count = 6;
  return c;
}

Construction triangular_prism(double a) {
  if (!(a > 0) || !std::isfinite(a)) throw InvalidInput("triangular_prism requires a > 0");
  std::vector<Vec> pts = prism_layer(1.0, a);
  for (auto& p : prism_layer(1.0, -a)) pts.push_back(p);
  Construction c{"prism", {{"a", {a}}}, PointConfiguration(pts), {}};
  auto& ref = c.reference;
  ref.scalars["bifurcation_a"] = 1.0;
  if (a < 1.0) {
    ref.local_minima.push_back(v3(0, 0, 0));
    ref.notes.push_back("origin is the only axial critical point");
  } else if (a > 1.0) {
    const double z = std::sqrt(a * a - 1.0);
    ref.local_minima.push_back(v3(0, 0, -z));
    ref.local_minima.push_back(v3(0, 0, z));
    ref.saddles.push_back(v3(0, 0, 0));
    ref.h = 2;
    ref.saddle_count = 7;
  } else {
    ref.degenerate.push_back(v3(0, 0, 0));
    ref.notes.push_back("origin has nullity 1 and positivity 2");
  }
  return c;
}

double AuxPolynomial::factored(double x) const {
  double p = 1;
  for (const auto& f : factors) p *= (x - f.a) * (x - f.a) + f.b * f.b;
  return p;
}

AuxPolynomial build_aux_polynomial(const std::vector<double>& r_values,
                                   const std::vector<double>& s_values) {
  const int h = static_cast<int>(r_values.size());
  if (h < 2) throw InvalidInput("aux polynomial needs h >= 2 minima");
  if (static_cast<int>(s_values.size()) != h - 1) {
    throw InvalidInput("aux polynomial needs exactly h-1 saddle values");
  }
  for (int j = 0; j + 1 < h; ++j) {
    if (!(r_values[j] < s_values[j] && s_values[j] < r_values[j + 1])) {
      throw InvalidInput("saddle values must interleave the minima: r_j < s_j < r_{j+1}");
    }
  }
  for (double v : r_values)
    if (!std::isfinite(v)) throw InvalidInput("non-finite minimum value");
  for (double v : s_values)
    if (!std::isfinite(v)) throw InvalidInput("non-finite saddle value");

  AuxPolynomial out;
  out.h = h;
  out.r_values = r_values;
  out.s_values = s_values;
  const double spread = r_values.back() - r_values.front();
  double scale = 1.0;
  if (spread > 1e3) scale = spread;
  out.scale = scale;

  std::vector<double> crit;
  for (double v : r_values) crit.push_back(v / scale);
  for (double v : s_values) crit.push_back(v / scale);
  const Polynomial dP = Polynomial::from_roots(crit);
  Polynomial P0 = dP.antiderivative() * (2.0 * h);
  double pmin = P0(r_values.front() / scale);
  for (double v : r_values) pmin = std::min(pmin, P0(v / scale));
  const Polynomial Pu = P0 + (1.0 - pmin);

  auto roots = Pu.roots();
  std::vector<std::complex<double>> upper;
  for (const auto& z : roots) {
    if (z.imag() > 0) upper.push_back(z);
  }
  if (static_cast<int>(upper.size()) != h) {
    throw NumericalFailure("aux polynomial roots do not pair into h conjugate pairs");
  }
  // Pairing check: each upper root must have a conjugate partner.
  for (const auto& z : upper) {
    double best = 1e300;
    for (const auto& w : roots) best = std::min(best, std::abs(w - std::conj(z)));
    if (best > 1e-8 * std::max(1.0, std::abs(z))) throw NumericalFailure("unpaired aux polynomial root");
  }
  std::sort(upper.begin(), upper.end(), [](auto x, auto y) { return x.real() < y.real(); });
  for (const auto& z : upper) out.factors.push_back({z.real() * scale, z.imag() * scale});

  // Back to the caller's coordinates: P(X) = scale^{2h} Pu(X / scale).
  std::vector<double> coeffs = Pu.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] *= std::pow(scale, 2.0 * h - static_cast<double>(i));
  }
  out.P = Polynomial(coeffs);
  out.min_value = std::pow(scale, 2.0 * h);

  // Factor product against coefficients at sample points.
  const double lo = r_values.front() - 1.0 * scale, hi = r_values.back() + 1.0 * scale;
  for (int i = 0; i <= 20; ++i) {
    const double x = lo + (hi - lo) * i / 20.0;
    const double p = out.P(x);
    if (std::abs(out.factored(x) - p) > 1e-8 * std::abs(p)) {
      throw NumericalFailure("aux polynomial factorization residual too large; rescale the inputs");
    }
  }
  for (std::size_t j = 0; j < out.factors.size(); ++j) {
    for (std::size_t k = j + 1; k < out.factors.size(); ++k) {
      if (std::abs(out.factors[j].a - out.factors[k].a) + std::abs(out.factors[j].b - out.factors[k].b) <
          1e-10 * scale) {
        throw NumericalFailure("aux polynomial has repeated quadratic factors");
      }
    }
  }
  return out;
}

Construction preassigned_minima(const std::vector<double>& r_values,
                                const std::vector<double>& s_values) {
  const AuxPolynomial P = build_aux_polynomial(r_values, s_values);
  std::vector<Vec> pts;
  for (const auto& f : P.factors) {
    for (auto& p : prism_layer(f.b, f.a)) pts.push_back(p);
  }
  Construction c{"preassigned", {{"minima", r_values}, {"saddles", s_values}}, PointConfiguration(pts), {}};
  for (double r : r_values) c.reference.local_minima.push_back(v3(0, 0, r));
  for (double s : s_values) c.reference.saddles.push_back(v3(0, 0, s));
  c.reference.h = P.h;
  c.reference.saddle_count = 4 * P.h - 1;
  c.reference.notes.push_back("3h off-axis saddles are expected for general r, s");
  return c;
}

Mat rotation120() {
  const double t = 2.0 * std::numbers::pi / 3.0;
  Mat R = Mat::Identity(3, 3);
  R(0, 0) = std::cos(t);
  R(0, 1) = -std::sin(t);
  R(1, 0) = std::sin(t);
  R(1, 1) = std::cos(t);
  return R;
}

namespace {

const std::vector<double>& need(const std::map<std::string, std::vector<double>>& p, const std::string& k,
                                const std::string& fam) {
  auto it = p.find(k);
  if (it == p.end() || it->second.empty()) throw InvalidInput(fam + " needs parameter " + k);
  return it->second;
}

int need_int(const std::map<std::string, std::vector<double>>& p, const std::string& k,
             const std::string& fam) {
  const double v = need(p, k, fam).front();
  if (v != std::floor(v)) throw InvalidInput(fam + ": " + k + " must be an integer");
  return static_cast<int>(v);
}

}  // namespace

Construction construct_family(const std::string& name,
                              const std::map<std::string, std::vector<double>>& params) {
  if (name == "hypercube_midpoints" || name == "hypercube") return hypercube_midpoints(need_int(params, "n", name));
  if (name == "simplex") return simplex_vertices(need_int(params, "n", name));
  if (name == "tetrahedron") return tetrahedron();
  if (name == "cube") return cube();
  if (name == "octa_six") return octa_six();
  if (name == "prism") return triangular_prism(need(params, "a", name).front());
  if (name == "preassigned") {
    auto it = params.find("saddles");
    return preassigned_minima(need(params, "minima", name),
                              it == params.end() ? std::vector<double>{} : it->second);
  }
  throw InvalidInput("unknown family '" + name + "'");
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"hypercube_midpoints", "simplex", "tetrahedron", "cube",
                                              "octa_six", "prism", "preassigned"};
  return names;
}

}  // namespace lemniscate
