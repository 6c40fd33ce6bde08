// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lemniscate/cli.hpp"
#include "lemniscate/complex_structure.hpp"
#include "lemniscate/constructions.hpp"
#include "lemniscate/error.hpp"
#include "lemniscate/level_set.hpp"
#include "lemniscate/merge_tree.hpp"
#include "lemniscate/polynomial.hpp"
#include "lemniscate/solver.hpp"
#include "lemniscate/stability.hpp"

using namespace lemniscate;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) note << "; ";
      note << what;
      pass = false;
    }
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

const CriticalPoint* nearest(const CriticalSet& set, CriticalKind k, const Vec& x, double* dist = nullptr) {
  const CriticalPoint* best = nullptr;
  double bd = INFINITY;
  for (const auto* p : set.of_kind(k)) {
    const double d = (p->location - x).norm();
    if (d < bd) {
      bd = d;
      best = p;
    }
  }
  if (dist) *dist = bd;
  return best;
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// Angle between the line through v and the line through u.
double line_angle(const Vec& v, const Vec& u) {
  const double c = std::min(1.0, std::abs(v.normalized().dot(u.normalized())));
  return std::acos(c);
}

PointConfiguration random_config(int r, int N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Vec> pts;
  while (static_cast<int>(pts.size()) < r) {
    Vec p(N);
    for (int i = 0; i < N; ++i) p(i) = u(rng);
    bool ok = true;
    for (const auto& q : pts) ok = ok && (p - q).norm() > 0.3;
    if (ok) pts.push_back(p);
  }
  return PointConfiguration(pts);
}

std::vector<Construction> named_families() {
  std::vector<Construction> out;
  for (int n = 3; n <= 5; ++n) out.push_back(hypercube_midpoints(n));
  for (int n = 4; n <= 8; ++n) out.push_back(simplex_vertices(n));
  out.push_back(tetrahedron());
  out.push_back(cube());
  out.push_back(octa_six());
  for (double a : {0.8, 1.25, std::sqrt(2.0), 2.0}) out.push_back(triangular_prism(a));
  out.push_back(preassigned_minima({-1, 1}, {0}));
  out.push_back(preassigned_minima({-2, 0, 2}, {-1, 1}));
  return out;
}

Verdict criterion1() {
  Verdict v;
  for (int N = 3; N <= 5; ++N) {
    const auto t0 = Clock::now();
    const auto c = hypercube_midpoints(N);
    const auto set = find_critical_points(c.config);
    const double secs = seconds_since(t0);
    const std::string tag = "N=" + std::to_string(N) + ": ";
    v.require(set.r == 2 * N, tag + "pole count");
    v.require(set.h == 1, tag + "h=" + std::to_string(set.h));
    v.require(set.s == 2 * N, tag + "saddles=" + std::to_string(set.s));
    double d = INFINITY;
    nearest(set, CriticalKind::local_minimum, Vec::Zero(N), &d);
    v.require(d < 1e-8, tag + "minimum off by " + fmt(d));
    const double rad = std::sqrt((N - 2.0) / N);
    for (int i = 0; i < N; ++i)
      for (double sg : {-1.0, 1.0}) {
        Vec y = Vec::Zero(N);
        y(i) = sg * rad;
        nearest(set, CriticalKind::saddle, y, &d);
        v.require(d < 1e-8, tag + "saddle off by " + fmt(d));
      }
    v.require(secs < 10, tag + "took " + fmt(secs) + " s");
  }
  return v;
}

Verdict criterion2() {
  Verdict v;
  for (int N = 4; N <= 8; ++N) {
    const double n = N;
    const auto c = simplex_vertices(N);
    const auto set = find_critical_points(c.config);
    const std::string tag = "N=" + std::to_string(N) + ": ";
    const Vec B = Vec::Constant(N, 1.0 / N);
    const auto* pb = nearest(set, CriticalKind::local_minimum, B);
    if (!pb) {
      v.require(false, tag + "no minimum");
      continue;
    }
    // Barycentre: 2N^3/(N(N-1)), multiplicity one, along B.
    {
      Eigen::SelfAdjointEigenSolver<Mat> es(hessian(c.config, pb->location));
      const double want = 2 * n * n * n / (n * (n - 1));
      int mult = 0, at = -1;
      for (int k = 0; k < N; ++k)
        if (rel(es.eigenvalues()(k), want) < 1e-6) {
          ++mult;
          at = k;
        }
      v.require(mult == 1, tag + "B eigenvalue multiplicity " + std::to_string(mult));
      if (at >= 0) v.require(line_angle(es.eigenvectors().col(at), B) < 1e-6, tag + "B eigenvector direction");
    }
    for (int i = 0; i < N; ++i) {
      Vec ei = Vec::Zero(N);
      ei(i) = 1;
      const Vec Q = (2.0 / (n - 1)) * B + ((n - 3) / (n - 1)) * ei;
      double d = INFINITY;
      const auto* pq = nearest(set, CriticalKind::saddle, Q, &d);
      if (!pq || d > 1e-8) {
        v.require(false, tag + "saddle Q_" + std::to_string(i + 1) + " not found");
        continue;
      }
      Eigen::SelfAdjointEigenSolver<Mat> es(hessian(c.config, pq->location));
      const Vec ev = es.eigenvalues();
      const double neg = -(n - 3) * n * n / (2 * (n - 2));
      v.require(rel(ev(0), neg) < 1e-6, tag + "Q negative eigenvalue " + fmt(ev(0)) + " vs " + fmt(neg));
      v.require(ev(1) > 0, tag + "Q negative eigenvalue not simple");
      v.require(line_angle(es.eigenvectors().col(0), B - ei) < 1e-6, tag + "Q negative eigenvector direction");
      const double third = (8 + (n - 3) * n * (4 + n * n)) / (2 * (n - 2) * (n - 2));
      int mult = 0;
      for (int k = 0; k < N; ++k) mult += rel(ev(k), third) < 1e-6;
      if (i == 0)
        v.require(mult == N - 2, tag + "third closed form " + fmt(third) + " has multiplicity " + std::to_string(mult) +
                                     " (Hessian gives " + fmt(ev(1)) + ".." + fmt(ev(N - 1)) + ")");
    }
  }
  return v;
}

Verdict criterion3() {
  Verdict v;
  struct Want {
    Construction c;
    int r, h, s;
  };
  for (const auto& w : {Want{tetrahedron(), 4, 1, 4}, Want{cube(), 8, 1, 8}, Want{octa_six(), 6, 1, 6}}) {
    const auto set = find_critical_points(w.c.config);
    v.require(set.r == w.r && set.h == w.h && set.s == w.s,
              w.c.family + ": (" + std::to_string(set.r) + "," + std::to_string(set.h) + "," +
                  std::to_string(set.s) + ")");
    if (w.c.family == "tetrahedron") {
      const Vec B = v3(0.5, 0.5, 0.5);
      for (const auto& p : w.c.config.points()) {
        double d = INFINITY;
        nearest(set, CriticalKind::saddle, p / 3.0 + 2.0 * B / 3.0, &d);
        v.require(d < 1e-8, "tetrahedron saddle off by " + fmt(d));
      }
    }
  }
  return v;
}

Verdict criterion4() {
  Verdict v;
  std::ostringstream out, err;
  const int code = run_cli({"sweep", "prism", "--a", "0.5:2:0.05"}, out, err);
  v.require(code == 0, "sweep exit code " + std::to_string(code));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::vector<double> at;
  while (std::getline(in, line))
    if (!line.empty()) at.push_back(std::stod(line.substr(0, line.find(','))));
  v.require(at.size() == 1, std::to_string(at.size()) + " bifurcation rows");
  for (double a : at) v.require(std::abs(a - 1) < 1e-4, "bifurcation at " + fmt(a));

  const auto p = triangular_prism(std::sqrt(2.0));
  const auto set = find_critical_points(p.config);
  for (double z : {-1.0, 1.0}) {
    double d = INFINITY;
    nearest(set, CriticalKind::local_minimum, v3(0, 0, z), &d);
    v.require(d < 1e-8, "a=sqrt2 minimum off by " + fmt(d));
  }
  const Mat H = hessian(triangular_prism(1.0).config, Vec::Zero(3));
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  int null = 0;
  for (int k = 0; k < 3; ++k) null += std::abs(es.eigenvalues()(k)) < 1e-6 * norm;
  v.require(null == 1, "a=1 origin nullity " + std::to_string(null));
  return v;
}

Verdict criterion5() {
  Verdict v;
  const auto t0 = Clock::now();
  struct Case {
    std::vector<double> r, s;
  };
  for (const auto& cs : {Case{{-1, 1}, {0}}, Case{{-2, 0, 2}, {-1, 1}}}) {
    const int h = static_cast<int>(cs.r.size());
    const std::string tag = "h=" + std::to_string(h) + ": ";
    const auto c = preassigned_minima(cs.r, cs.s);
    const auto aux = build_aux_polynomial(cs.r, cs.s);
    const auto set = find_critical_points(c.config);
    for (double r : cs.r) {
      double d = INFINITY;
      nearest(set, CriticalKind::local_minimum, v3(0, 0, r), &d);
      v.require(d < 1e-7, tag + "minimum at " + fmt(r) + " off by " + fmt(d));
    }
    for (double s : cs.s) {
      double d = INFINITY;
      nearest(set, CriticalKind::saddle, v3(0, 0, s), &d);
      v.require(d < 1e-7, tag + "saddle at " + fmt(s) + " off by " + fmt(d));
    }
    v.require(set.h == h, tag + "h=" + std::to_string(set.h));
    v.require(set.s == 4 * h - 1, tag + "saddles=" + std::to_string(set.s));
    // Independent oracle for P: integrate P' = prod (X - r_j)(X - s_j) * (X - r_h) by hand.
    std::vector<double> roots = cs.r;
    roots.insert(roots.end(), cs.s.begin(), cs.s.end());
    const Polynomial dP = Polynomial::from_roots(roots) * (2.0 * h);
    Polynomial P = dP.antiderivative();
    double mn = INFINITY;
    for (double r : cs.r) mn = std::min(mn, P(r));
    P = P + (1.0 - mn);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const double t = -3 + 6.0 * i / 49;
      const double F = std::exp(potential(c.config, v3(0, 0, t)));
      worst = std::max(worst, rel(F, std::pow(P(t), 3)));
      worst = std::max(worst, rel(aux.P(t), P(t)));
    }
    v.require(worst < 1e-10, tag + "F(0,t)/P(t)^3 off by " + fmt(worst));
  }
  const double secs = seconds_since(t0);
  v.require(secs < 60, "took " + fmt(secs) + " s");
  return v;
}

std::vector<PointConfiguration> random_suite() {
  std::mt19937_64 rng(2024);
  std::vector<PointConfiguration> out;
  for (int k = 0; k < 24; ++k) {
    const int N = 2 + k % 4;
    const int r = 3 + k % 6;
    out.push_back(random_config(r, N, rng));
  }
  return out;
}

Verdict criterion6() {
  Verdict v;
  int checked = 0;
  auto check_count = [&](const PointConfiguration& cfg, const std::string& name) {
    const auto set = find_critical_points(cfg);
    if (!set.local_morse || set.span_dimension < 3) return;
    ++checked;
    v.require(set.s == set.r + set.h - 1, name + ": s=" + std::to_string(set.s) + " r+h-1=" +
                                              std::to_string(set.r + set.h - 1));
  };
  for (const auto& c : named_families()) check_count(c.config, c.family);
  int k = 0;
  for (const auto& cfg : random_suite()) check_count(cfg, "random#" + std::to_string(k++));
  v.require(checked >= 20, "only " + std::to_string(checked) + " span>=3 local Morse cases");

  // Planar configurations in R^3: critical points are the roots of P'(z).
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 5; ++t) {
    const int r = 3 + t;
    std::vector<Vec> pts;
    std::vector<double> zr;
    while (static_cast<int>(pts.size()) < r) {
      const Vec p = v3(u(rng), u(rng), 0);
      bool ok = true;
      for (const auto& q : pts) ok = ok && (p - q).norm() > 0.3;
      if (ok) pts.push_back(p);
    }
    const PointConfiguration cfg(pts);
    const auto set = find_critical_points(cfg);
    const std::string tag = "planar#" + std::to_string(t) + ": ";
    v.require(set.h == 0 && set.s == r - 1, tag + "h=" + std::to_string(set.h) + " s=" + std::to_string(set.s));
    // P(z) = prod (z - w_k) with complex coefficients; P' roots by companion matrix.
    std::vector<std::complex<double>> coef{1.0};
    for (const auto& p : pts) {
      const std::complex<double> w(p(0), p(1));
      std::vector<std::complex<double>> next(coef.size() + 1, 0.0);
      for (std::size_t i = 0; i < coef.size(); ++i) {
        next[i + 1] += coef[i];
        next[i] -= w * coef[i];
      }
      coef = next;
    }
    const int deg = r - 1;  // degree of P'
    std::vector<std::complex<double>> d(static_cast<std::size_t>(deg) + 1);
    for (int i = 1; i <= r; ++i) d[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) * coef[static_cast<std::size_t>(i)];
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < deg; ++i) C(i, deg - 1) = -d[static_cast<std::size_t>(i)] / d[static_cast<std::size_t>(deg)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
    for (int i = 0; i < deg; ++i) {
      std::complex<double> z = es.eigenvalues()(i);
      // One Newton polish on P'.
      std::complex<double> p = 0, dp = 0;
      for (int k2 = deg; k2 >= 0; --k2) {
        dp = dp * z + p;
        p = p * z + d[static_cast<std::size_t>(k2)];
      }
      z -= p / dp;
      double dist = INFINITY;
      nearest(set, CriticalKind::saddle, v3(z.real(), z.imag(), 0), &dist);
      v.require(dist < 1e-8, tag + "root of P' off by " + fmt(dist));
    }
    // Normal direction is positive at every planar critical point.
    for (const auto* p : set.of_kind(CriticalKind::saddle)) {
      const Mat H = hessian(cfg, p->location);
      v.require(H(2, 2) > 0 && std::abs(H(0, 2)) < 1e-9 && std::abs(H(1, 2)) < 1e-9, tag + "normal block");
    }
  }
  return v;
}

Verdict criterion7() {
  Verdict v;
  int configs = 0;
  auto check = [&](const PointConfiguration& cfg, const std::string& name) {
    ++configs;
    CriticalSet set;
    try {
      set = find_critical_points(cfg);
    } catch (const TheoremViolation& e) {
      v.require(false, name + ": " + e.what());
      return;
    }
    const int N = cfg.dimension();
    for (const auto& p : set.points) {
      if (p.kind == CriticalKind::absolute_minimum) continue;
      // Recount with an independent eigen-decomposition of the analytic Hessian.
      Eigen::SelfAdjointEigenSolver<Mat> es(hessian(cfg, p.location), Eigen::EigenvaluesOnly);
      const double thr = 1e-8 * es.eigenvalues().cwiseAbs().maxCoeff();
      int neg = 0, pos = 0, zero = 0;
      for (int k = 0; k < N; ++k) {
        const double l = es.eigenvalues()(k);
        (l < -thr ? neg : l > thr ? pos : zero)++;
      }
      if (zero == 0) {
        v.require(neg <= 1, name + ": negativity " + std::to_string(neg));
        v.require(pos >= N - 1, name + ": positivity " + std::to_string(pos));
      }
      const auto hm = hull_membership(cfg, p.location);
      v.require(hm.determinate && hm.margin >= -1e-9 * cfg.diameter(), name + ": outside hull by " + fmt(hm.margin));
    }
  };
  int k = 0;
  for (const auto& cfg : random_suite()) check(cfg, "random#" + std::to_string(k++));
  for (const auto& c : named_families()) check(c.config, c.family);
  v.require(configs >= 20, "too few configurations");
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst_g = 0, worst_h = 0;
  for (int t = 0; t < 100; ++t) {
    const int N = 2 + t % 4;
    const auto cfg = random_config(3 + t % 5, N, rng);
    Vec x(N);
    do {
      for (int i = 0; i < N; ++i) x(i) = u(rng);
    } while (min_pole_distance(cfg, x) < 0.1 * cfg.scale());
    const double h = 1e-5 * cfg.scale();
    auto f = [&](const Vec& y) { return potential(cfg, y); };
    Vec g(N);
    Mat H(N, N);
    for (int i = 0; i < N; ++i) {
      Vec a = x, b = x;
      a(i) += h;
      b(i) -= h;
      g(i) = (f(a) - f(b)) / (2 * h);
    }
    const double hh = 2e-4 * cfg.scale();  // second differences need a larger step
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        Vec pp = x, pm = x, mp = x, mm = x;
        pp(i) += hh, pp(j) += hh;
        pm(i) += hh, pm(j) -= hh;
        mp(i) -= hh, mp(j) += hh;
        mm(i) -= hh, mm(j) -= hh;
        H(i, j) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * hh * hh);
      }
    const Vec ga = gradient(cfg, x);
    const Mat Ha = hessian(cfg, x);
    worst_g = std::max(worst_g, (ga - g).norm() / std::max(ga.norm(), 1e-12));
    worst_h = std::max(worst_h, (Ha - H).norm() / std::max(Ha.norm(), 1e-12));
  }
  v.require(worst_g < 1e-6, "gradient relative error " + fmt(worst_g));
  v.require(worst_h < 1e-4, "Hessian relative error " + fmt(worst_h));
  if (v.pass) v.note << "max rel err gradient " << fmt(worst_g) << ", Hessian " << fmt(worst_h);
  return v;
}

Verdict criterion9() {
  Verdict v;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 4;
    Eigen::VectorXcd z(n), w(n);
    for (int i = 0; i < n; ++i) {
      z(i) = {g(rng), g(rng)};
      w(i) = {g(rng), g(rng)};
    }
    if (t % 4 == 0) w = std::complex<double>(g(rng), g(rng)) * z;
    const double val = fubini_levi(z, w);
    const auto proj = (z.dot(w) / z.squaredNorm()) * z;
    const bool in_line = (w - proj).norm() <= 1e-9 * w.norm();
    v.require(val >= -1e-12, "negative Fubini-Study value");
    v.require(in_line == (val <= 1e-9 * w.squaredNorm()), "kernel is not C z");
  }
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    const int m = 2 * (1 + t % 4);
    Mat A(m, m), O(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        A(i, j) = g(rng);
        O(i, j) = g(rng);
      }
    const Mat H = (A + A.transpose()) / 2;
    Eigen::HouseholderQR<Mat> qr(O);
    const ComplexStructure J(qr.householderQ() * Mat::Identity(m, m));
    worst = std::max(worst, (decompose_hessian(H, J).reconstruct(J) - H).cwiseAbs().maxCoeff());
  }
  v.require(worst < 1e-9, "reconstruction error " + fmt(worst));
  for (const auto& c : named_families()) {
    const auto set = find_critical_points(c.config);
    if (set.span_dimension < 3) continue;
    for (const auto& p : set.points) {
      if (p.kind == CriticalKind::absolute_minimum) continue;
      Mat H = hessian(c.config, p.location);
      if (H.rows() % 2) {
        Mat E = Mat::Zero(H.rows() + 1, H.rows() + 1);
        E.topLeftCorner(H.rows(), H.rows()) = H;
        E(H.rows(), H.rows()) = H.norm();
        H = E;
      }
      bool failed = false;
      try {
        adapted_structure(H);
      } catch (const PreconditionFailed&) {
        failed = true;
      }
      v.require(failed, c.family + ": adapted structure exists at a critical point");
    }
  }
  return v;
}

Verdict criterion10() {
  Verdict v;
  const auto t0 = Clock::now();
  int comps = 0, open = 0, levels_total = 0;
  std::vector<Construction> fams{hypercube_midpoints(3), tetrahedron(), cube(), octa_six(),
                                 preassigned_minima({-1, 1}, {0})};
  for (const auto& c : fams) {
    const auto set = find_critical_points(c.config);
    const auto tree = merge_tree(c.config, set);
    v.require(tree.anomalies.empty(), c.family + ": merge tree anomaly");
    auto levels = sample_regular_levels(c.config, set, 10, 128);
    v.require(levels.size() == 10, c.family + ": only " + std::to_string(levels.size()) + " resolvable levels");
    double top = -INFINITY;
    for (const auto& p : set.points)
      if (p.kind != CriticalKind::absolute_minimum) top = std::max(top, p.value);
    const auto big = extract_level_set(c.config, top + 5, 128);
    const auto bt = euler_characteristic(big);
    v.require(bt.size() == 1 && bt[0].watertight && bt[0].euler == 2, c.family + ": large level is not one sphere");
    for (const auto& r : betti_trace(c.config, tree, levels, 128)) {
      ++levels_total;
      v.require(r.consistent, c.family + ": level " + fmt(r.level) + " has " + std::to_string(r.components) +
                                  " components, tree " + std::to_string(r.expected_components));
      for (std::size_t i = 0; i < r.euler.size(); ++i) {
        ++comps;
        if (!r.watertight[i]) {
          ++open;
          continue;
        }
        v.require(r.euler[i] == 2, c.family + ": chi " + std::to_string(r.euler[i]) + " at " + fmt(r.level));
      }
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 300, "took " + fmt(secs) + " s");
  if (v.pass)
    v.note << levels_total << " levels, " << comps << " components (" << open << " not watertight), " << fmt(secs)
           << " s";
  return v;
}

Verdict criterion11() {
  Verdict v;
  for (const auto& c : {tetrahedron(), preassigned_minima({-1, 1}, {0})}) {
    const auto rep = perturbation_stability(c.config, 1e-3, 20);
    v.require(rep.preserved == 20, c.family + ": h preserved in " + std::to_string(rep.preserved) + "/20");
    v.require(rep.global_morse_count >= 18, c.family + ": global Morse in " + std::to_string(rep.global_morse_count) + "/20");
    if (v.pass) v.note << c.family << " " << rep.preserved << "/20 preserved, " << rep.global_morse_count << "/20 global Morse; ";
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"hypercube N=3..5 inventory and saddle positions", criterion1},
      {"simplex N=4..8 Hessian eigenvalues at B and Q_i", criterion2},
      {"tetrahedron / cube / octa-six inventories", criterion3},
      {"prism bifurcation and minima", criterion4},
      {"preassigned minima h=2, h=3", criterion5},
      {"Morse count identity and planar reduction", criterion6},
      {"index and hull localization property suite", criterion7},
      {"derivatives against finite differences", criterion8},
      {"Levi-form suite", criterion9},
      {"level-set topology (N=3, 128^3)", criterion10},
      {"stability under 1e-3 perturbations", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ["
              << fmt(seconds_since(t0)) << " s]";
    const std::string note = v.note.str();
    if (!note.empty()) std::cout << " -- " << note;
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
