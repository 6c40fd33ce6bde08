#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lemniscate/constructions.hpp"
#include "lemniscate/error.hpp"
#include "lemniscate/solver.hpp"
#include "test_util.hpp"

using namespace lemniscate;
using testutil::vec;

TEST_CASE("hypercube midpoints reference data") {
  const auto c3 = hypercube_midpoints(3);
  CHECK(c3.config.r() == 6);
  CHECK(c3.reference.scalars.at("saddle_radius") == doctest::Approx(0.5773502692));
  CHECK(c3.reference.scalars.at("saddle_axial_hessian") == doctest::Approx(-9));
  CHECK(hypercube_midpoints(4).reference.scalars.at("saddle_radius") == doctest::Approx(0.7071067812));
  CHECK_THROWS_AS(hypercube_midpoints(2), InvalidInput);

  // The axial entry is the Hessian at the saddle, computed independently.
  const Mat H = hessian(c3.config, c3.reference.saddles[0]);
  const int axis = [&] {
    Eigen::Index i;
    c3.reference.saddles[0].cwiseAbs().maxCoeff(&i);
    return static_cast<int>(i);
  }();
  CHECK(H(axis, axis) == doctest::Approx(-9).epsilon(1e-10));
}

TEST_CASE("simplex reference data") {
  const auto c = simplex_vertices(4);
  Vec q = Vec::Constant(4, 1.0 / 6);
  q(0) += 1.0 / 3;
  CHECK((c.reference.saddles[0] - q).norm() < 1e-15);
  CHECK(c.reference.scalars.at("B_eig_parallel") == doctest::Approx(32.0 / 3));
  CHECK(c.reference.scalars.at("Q_eig_negative") == doctest::Approx(-4));
  CHECK_THROWS_AS(simplex_vertices(3), InvalidInput);
}

TEST_CASE("section-seven solids") {
  const auto t = tetrahedron();
  CHECK(t.config.r() == 4);
  CHECK((t.reference.local_minima[0] - vec({0.5, 0.5, 0.5})).norm() == 0);
  CHECK((t.reference.saddles[0] - vec({2.0 / 3, 1.0 / 3, 1.0 / 3})).norm() < 1e-15);
  CHECK(cube().config.r() == 8);
  CHECK(octa_six().config.r() == 6);
  CHECK((cube().reference.local_minima[0] - vec({0.5, 0.5, 0.5})).norm() == 0);
}

TEST_CASE("symmetric centers are critical minima") {
  for (const auto& c : {hypercube_midpoints(3), hypercube_midpoints(5), octa_six(), cube()}) {
    const Vec center = c.reference.local_minima[0];
    CHECK(gradient(c.config, center).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(hessian(c.config, center));
    CHECK(es.eigenvalues().minCoeff() > 0);
  }
}

TEST_CASE("triangular prism") {
  const auto p = triangular_prism(2.0);
  CHECK(p.config.r() == 6);
  CHECK(p.config.point(2)(0) == doctest::Approx(1));
  CHECK(std::abs(p.config.point(2)(1)) < 1e-15);
  REQUIRE(p.reference.local_minima.size() == 2);
  CHECK(std::abs(std::abs(p.reference.local_minima[0](2)) - std::sqrt(3.0)) < 1e-15);
  CHECK(gradient(p.config, p.reference.local_minima[0]).norm() < 1e-12);
  CHECK_THROWS_AS(triangular_prism(0), InvalidInput);
  CHECK_THROWS_AS(triangular_prism(-1), InvalidInput);

  // a = 0.5: the origin is a nondegenerate minimum; a = 1: nullity one.
  Eigen::SelfAdjointEigenSolver<Mat> half(hessian(triangular_prism(0.5).config, Vec::Zero(3)));
  CHECK(half.eigenvalues().minCoeff() > 0);
  const Mat H1 = hessian(triangular_prism(1.0).config, Vec::Zero(3));
  Eigen::SelfAdjointEigenSolver<Mat> one(H1);
  CHECK(std::abs(one.eigenvalues()(0)) < 1e-12 * H1.norm());
  CHECK(one.eigenvalues()(1) > 0);
}

TEST_CASE("auxiliary polynomial, h = 2") {
  const auto aux = build_aux_polynomial({-1, 1}, {0});
  // Monic normalization: X^4 - 2X^2 + C with min 1 at X = +-1.
  const auto& co = aux.P.coefficients();
  REQUIRE(co.size() == 5);
  CHECK(co[4] == doctest::Approx(1));
  CHECK(co[3] == doctest::Approx(0).scale(1));
  CHECK(co[2] == doctest::Approx(-2));
  CHECK(co[1] == doctest::Approx(0).scale(1));
  CHECK(co[0] == doctest::Approx(2));
  CHECK(aux.P(1.0) == doctest::Approx(1));
  CHECK(aux.P(-1.0) == doctest::Approx(1));
  const Polynomial dP = aux.P.derivative();
  for (double x : {-1.0, 0.0, 1.0}) CHECK(std::abs(dP(x)) < 1e-12);
  // Factors reproduce P at 20 points.
  for (int i = 0; i < 20; ++i) {
    const double x = -2.5 + 5.0 * i / 19;
    CHECK(aux.factored(x) == doctest::Approx(aux.P(x)).epsilon(1e-10));
  }
  for (const auto& f : aux.factors) CHECK(f.b > 0);
}

TEST_CASE("auxiliary polynomial input validation") {
  CHECK_THROWS_AS(build_aux_polynomial({1}, {}), InvalidInput);
  CHECK_THROWS_AS(build_aux_polynomial({1, -1}, {0}), InvalidInput);
  CHECK_THROWS_AS(build_aux_polynomial({-1, 1}, {2}), InvalidInput);
  CHECK_THROWS_AS(build_aux_polynomial({-1, 1}, {}), InvalidInput);
}

TEST_CASE("derivative roots match the prescribed values (companion oracle)") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.3, 1.5);
  for (int t = 0; t < 20; ++t) {
    const int h = 2 + t % 3;
    std::vector<double> r, s;
    double x = -2;
    for (int j = 0; j < h; ++j) {
      r.push_back(x);
      x += u(rng);
      if (j + 1 < h) {
        s.push_back(x);
        x += u(rng);
      }
    }
    const auto aux = build_aux_polynomial(r, s);
    std::vector<double> want = r;
    want.insert(want.end(), s.begin(), s.end());
    std::sort(want.begin(), want.end());
    auto roots = aux.P.derivative().roots();
    REQUIRE(roots.size() == want.size());
    std::vector<double> got;
    for (const auto& z : roots) {
      CHECK(std::abs(z.imag()) < 1e-8);
      got.push_back(z.real());
    }
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-8).scale(1));
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i] - got[i - 1] > 1e-3);  // simple roots
    // Positivity with min exactly 1 at the minima.
    double mn = 1e300;
    for (double v : r) mn = std::min(mn, aux.P(v));
    CHECK(mn == doctest::Approx(1));
  }
}

TEST_CASE("preassigned minima: axis identity and rotation invariance") {
  for (const auto& [r, s] : std::vector<std::pair<std::vector<double>, std::vector<double>>>{
           {{-1, 1}, {0}}, {{-2, 0, 2}, {-1, 1}}, {{-1.5, 0.2, 1.0}, {-0.4, 0.7}}}) {
    const auto aux = build_aux_polynomial(r, s);
    const auto c = preassigned_minima(r, s);
    CHECK(c.config.r() == 3 * static_cast<int>(r.size()));
    CHECK(c.reference.saddle_count == 4 * static_cast<int>(r.size()) - 1);
    for (int i = 0; i < 50; ++i) {
      const double t = -3 + 6.0 * i / 49;
      const double F = std::exp(potential(c.config, vec({0, 0, t})));
      const double P3 = std::pow(aux.P(t), 3);
      CHECK(F / P3 == doctest::Approx(1).epsilon(1e-10));
    }
    std::mt19937_64 rng(6);
    const Mat R = rotation120();
    for (int i = 0; i < 100; ++i) {
      const Vec x = testutil::random_vec(3, rng, -2, 2);
      if (min_pole_distance(c.config, x) < 1e-3) continue;
      CHECK(potential(c.config, R * x) == doctest::Approx(potential(c.config, x)).epsilon(1e-12));
    }
  }
  const Mat R = rotation120();
  const auto p = triangular_prism(1.3);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Vec x = testutil::random_vec(3, rng, -2, 2);
    CHECK(potential(p.config, R * x) == doctest::Approx(potential(p.config, x)).epsilon(1e-12));
  }
}

TEST_CASE("poorly scaled aux inputs are rescaled") {
  const auto aux = build_aux_polynomial({-2000, 0, 2000}, {-1000, 1000});
  CHECK(aux.scale != 1.0);
  auto roots = aux.P.derivative().roots();
  std::vector<double> got;
  for (const auto& z : roots) got.push_back(z.real());
  std::sort(got.begin(), got.end());
  const std::vector<double> want{-2000, -1000, 0, 1000, 2000};
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-6 * 2000);
}

TEST_CASE("family dispatch") {
  CHECK(construct_family("hypercube", {{"n", {4}}}).config.r() == 8);
  CHECK(construct_family("prism", {{"a", {1.25}}}).config.r() == 6);
  CHECK(construct_family("preassigned", {{"minima", {-1, 1}}, {"saddles", {0}}}).config.r() == 6);
  CHECK_THROWS_AS(construct_family("simplex", {{"n", {3}}}), InvalidInput);
  CHECK_THROWS_AS(construct_family("simplex", {{"n", {4.5}}}), InvalidInput);
  CHECK_THROWS_AS(construct_family("prism", {}), InvalidInput);
  CHECK_THROWS_AS(construct_family("dodecahedron", {}), InvalidInput);
  for (const auto& name : family_names()) CHECK(!name.empty());
}

TEST_CASE("closed forms agree with the solver") {
  for (const auto& c : {tetrahedron(), cube(), octa_six(), hypercube_midpoints(3), simplex_vertices(4),
                        triangular_prism(2.0), preassigned_minima({-1, 1}, {0})}) {
    const auto set = find_critical_points(c.config);
    const double tol = c.family == "preassigned" ? 1e-7 : 1e-8;
    for (const auto& m : c.reference.local_minima) {
      double best = 1e300;
      for (const auto* p : set.of_kind(CriticalKind::local_minimum)) best = std::min(best, (p->location - m).norm());
      CHECK(best < tol);
    }
    for (const auto& y : c.reference.saddles) {
      double best = 1e300;
      for (const auto* p : set.of_kind(CriticalKind::saddle)) best = std::min(best, (p->location - y).norm());
      CHECK(best < tol);
    }
    if (c.reference.h) CHECK(set.h == *c.reference.h);
    if (c.reference.saddle_count) CHECK(set.s == *c.reference.saddle_count);
  }
}
