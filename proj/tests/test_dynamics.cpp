#include <cmath>

#include "doctest.h"
#include "lemniscate/bifurcation.hpp"
#include "lemniscate/constructions.hpp"
#include "lemniscate/error.hpp"
#include "lemniscate/stability.hpp"

using namespace lemniscate;

TEST_CASE("parameter ranges") {
  const auto r = ParameterRange::parse("0.5:2:0.05");
  const auto s = r.samples();
  CHECK(s.size() == 31);
  CHECK(s.front() == 0.5);
  CHECK(s.back() == doctest::Approx(2.0));
  CHECK(ParameterRange::parse("1:1:0.1").samples().size() == 1);
  CHECK_THROWS_AS(ParameterRange::parse("2:1:0.1"), InvalidInput);
  CHECK_THROWS_AS(ParameterRange::parse("0:1:0"), InvalidInput);
  CHECK_THROWS_AS(ParameterRange::parse("0:1"), InvalidInput);
  CHECK_THROWS_AS(ParameterRange::parse("a:b:c"), InvalidInput);
  CHECK_THROWS_AS(ParameterRange::parse(""), InvalidInput);
}

TEST_CASE("prism sweep finds the pitchfork at a = 1") {
  const auto res = bifurcation_sweep([](double a) { return triangular_prism(a).config; },
                                     ParameterRange::parse("0.5:2:0.05"));
  REQUIRE(res.bifurcations.size() == 1);
  const auto& b = res.bifurcations.front();
  CHECK(std::abs(b.parameter - 1.0) < 1e-4);
  CHECK(b.location.norm() < 1e-6);
  CHECK(b.lambda_before * b.lambda_after <= 0);
}

TEST_CASE("no sign change on [1.5, 2]") {
  const auto res = bifurcation_sweep([](double a) { return triangular_prism(a).config; },
                                     ParameterRange::parse("1.5:2:0.1"));
  CHECK(res.bifurcations.empty());
  CHECK(res.losses.empty());
  // Two minima and seven saddles continue across the interval.
  CHECK(res.branches.size() == 9);
}

TEST_CASE("rigid scaling keeps every branch") {
  const auto res = bifurcation_sweep(
      [](double t) {
        const auto base = tetrahedron();
        std::vector<Vec> pts;
        for (const auto& p : base.config.points()) pts.push_back(t * p);
        return PointConfiguration(pts);
      },
      ParameterRange::parse("1:2:0.25"));
  CHECK(res.bifurcations.empty());
  CHECK(res.losses.empty());
  for (const auto& b : res.branches) {
    CHECK(b.locations.size() == 5);
    // Critical points scale with the configuration.
    CHECK((b.locations.back() - 2.0 * b.locations.front()).norm() < 1e-8);
  }
}

TEST_CASE("minima survive small perturbations") {
  SUBCASE("tetrahedron") {
    const auto rep = perturbation_stability(tetrahedron().config, 1e-3, 20);
    CHECK(rep.original_h == 1);
    CHECK(rep.trials.size() == 20);
    CHECK(rep.all_preserved());
    CHECK(rep.global_morse_count >= 18);
    CHECK(rep.stability_radius_estimate > 0);
  }
  SUBCASE("preassigned h = 2") {
    const auto rep = perturbation_stability(preassigned_minima({-1, 1}, {0}).config, 1e-3, 20);
    CHECK(rep.original_h == 2);
    CHECK(rep.all_preserved());
    CHECK(rep.global_morse_count >= 18);
  }
  SUBCASE("perturbation within the radius estimate keeps h = 3") {
    const auto cfg = preassigned_minima({-2, 0, 2}, {-1, 1}).config;
    const auto probe = perturbation_stability(cfg, 0, 0);
    const auto rep = perturbation_stability(cfg, 0.5 * probe.stability_radius_estimate, 5);
    CHECK(rep.original_h == 3);
    CHECK(rep.all_preserved());
  }
  SUBCASE("trials are reproducible") {
    const auto a = perturbation_stability(tetrahedron().config, 1e-2, 3, {}, 42);
    const auto b = perturbation_stability(tetrahedron().config, 1e-2, 3, {}, 42);
    for (std::size_t i = 0; i < a.trials.size(); ++i) CHECK(a.trials[i].s == b.trials[i].s);
  }
  SUBCASE("degenerate input and bad arguments") {
    CHECK_THROWS_AS(perturbation_stability(triangular_prism(1.0).config, 1e-3, 2), PreconditionFailed);
    CHECK_THROWS_AS(perturbation_stability(tetrahedron().config, -1, 2), InvalidInput);
  }
}
