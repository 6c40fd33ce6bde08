#include "lemniscate/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "lemniscate/error.hpp"
#include "lemniscate/level_set.hpp"
#include "lemniscate/merge_tree.hpp"
#include "lemniscate/report.hpp"

namespace lemniscate {

double reference_distance(const CriticalSet& set, const std::vector<Vec>& ref,
                          const std::vector<CriticalKind>& kinds) {
  double worst = 0;
  for (const auto& w : ref) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : set.points)
      for (auto k : kinds)
        if (p.kind == k) best = std::min(best, (p.location - w).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

namespace {

struct Named {
  std::string name;
  Construction c;
};

std::vector<Named> builtin_families() {
  std::vector<Named> out;
  for (int n = 3; n <= 5; ++n) out.push_back({"hypercube" + std::to_string(n), hypercube_midpoints(n)});
  for (int n = 4; n <= 6; ++n) out.push_back({"simplex" + std::to_string(n), simplex_vertices(n)});
  out.push_back({"tetrahedron", tetrahedron()});
  out.push_back({"cube", cube()});
  out.push_back({"octa_six", octa_six()});
  out.push_back({"prism0.8", triangular_prism(0.8)});
  out.push_back({"prism1.25", triangular_prism(1.25)});
  out.push_back({"prism_sqrt2", triangular_prism(std::sqrt(2.0))});
  out.push_back({"preassigned2", preassigned_minima({-1, 1}, {0})});
  out.push_back({"preassigned3", preassigned_minima({-2, 0, 2}, {-1, 1})});
  return out;
}

class Runner {
 public:
  explicit Runner(std::vector<CheckResult>& out) : out_(out) {}

  void run(const std::string& suite, const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{suite, name, CheckOutcome::pass, "", 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.message = body();
      if (!r.message.empty() && r.message.rfind("ok", 0) != 0) r.outcome = CheckOutcome::fail;
    } catch (const InvalidInput& e) {
      r.outcome = CheckOutcome::input_error;
      r.message = std::string("construction error: ") + e.what();
    } catch (const TheoremViolation& e) {
      r.outcome = CheckOutcome::fail;
      r.message = std::string("theorem violation: ") + e.what();
    } catch (const std::exception& e) {
      r.outcome = CheckOutcome::numerical_error;
      r.message = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out_.push_back(std::move(r));
  }

 private:
  std::vector<CheckResult>& out_;
};

std::string num(double x) { return format_double(x); }

void core_checks(Runner& run, const std::string& name, const std::function<PointConfiguration()>& make,
                 const SolverOptions& sopts) {
  std::optional<PointConfiguration> cfg;
  std::optional<CriticalSet> set;
  run.run("core", name + "/index", [&]() -> std::string {
    cfg.emplace(make());
    set.emplace(find_critical_points(*cfg, sopts));
    const int N = cfg->dimension();
    for (const auto& p : set->points) {
      if (p.kind == CriticalKind::absolute_minimum || p.nullity > 0) continue;
      if (p.negativity > 1 || p.positivity < N - 1)
        return "critical point with negativity " + std::to_string(p.negativity) + ", positivity " +
               std::to_string(p.positivity);
    }
    return "ok: " + std::to_string(set->points.size()) + " critical points";
  });
  if (!set) return;
  run.run("core", name + "/gauss", [&]() -> std::string {
    const double tol = -1e-9 * cfg->diameter();
    for (const auto& p : set->points)
      if (p.kind != CriticalKind::absolute_minimum && p.hull_margin < tol)
        return "critical point outside the hull, margin " + num(p.hull_margin);
    return "ok: min margin " + num(set->certification.min_hull_margin);
  });
  run.run("core", name + "/morse-count", [&]() -> std::string {
    if (!set->local_morse) return "ok: skipped (not local Morse)";
    if (set->span_dimension < 3) {
      if (set->h == 0 && set->s == set->r - 1) return "ok: planar, s = r - 1";
      return "planar count off: h=" + std::to_string(set->h) + " s=" + std::to_string(set->s);
    }
    const auto v = morse_report(*set, set->span_dimension);
    return v.pass ? "ok: " + v.message : v.message;
  });
}

void construction_checks(Runner& run, const Named& f, const SolverOptions& sopts) {
  run.run("construction", f.name + "/reference", [&]() -> std::string {
    const auto set = find_critical_points(f.c.config, sopts);
    const double tol = f.c.family == "preassigned" ? 1e-7 : 1e-8;
    const auto& ref = f.c.reference;
    std::ostringstream msg;
    const double dm = reference_distance(set, ref.local_minima, {CriticalKind::local_minimum});
    const double ds = reference_distance(set, ref.saddles, {CriticalKind::saddle});
    const double dd = reference_distance(set, ref.degenerate, {CriticalKind::degenerate});
    if (dm > tol) msg << "minima off by " << num(dm) << "; ";
    if (ds > tol) msg << "saddles off by " << num(ds) << "; ";
    if (dd > tol) msg << "degenerate points off by " << num(dd) << "; ";
    if (ref.h && *ref.h != set.h) msg << "h=" << set.h << " expected " << *ref.h << "; ";
    if (ref.saddle_count && *ref.saddle_count != set.s) msg << "s=" << set.s << " expected " << *ref.saddle_count << "; ";
    const std::string m = msg.str();
    return m.empty() ? "ok: h=" + std::to_string(set.h) + " s=" + std::to_string(set.s) : m;
  });
}

void aux_checks(Runner& run) {
  struct Case {
    std::vector<double> r, s;
  };
  for (const auto& cs : {Case{{-1, 1}, {0}}, Case{{-2, 0, 2}, {-1, 1}}}) {
    const std::string tag = "aux_h" + std::to_string(cs.r.size());
    run.run("construction", tag + "/F_axis_equals_P_cubed", [&]() -> std::string {
      const auto aux = build_aux_polynomial(cs.r, cs.s);
      const auto c = preassigned_minima(cs.r, cs.s);
      double worst = 0;
      for (int i = 0; i < 50; ++i) {
        const double t = -3.0 + 6.0 * i / 49.0;
        Vec x = Vec::Zero(3);
        x(2) = t;
        const double F = std::exp(potential(c.config, x));
        const double P = aux.P(t);
        worst = std::max(worst, std::abs(F - P * P * P) / (P * P * P));
      }
      return worst <= 1e-10 ? "ok: max rel err " + num(worst) : "max relative error " + num(worst);
    });
    run.run("construction", tag + "/derivative_roots", [&]() -> std::string {
      const auto aux = build_aux_polynomial(cs.r, cs.s);
      std::vector<double> want = cs.r;
      want.insert(want.end(), cs.s.begin(), cs.s.end());
      const auto roots = aux.P.derivative().roots();
      if (roots.size() != want.size()) return "P' has " + std::to_string(roots.size()) + " roots";
      for (double w : want) {
        int hits = 0;
        for (const auto& z : roots)
          if (std::abs(z - std::complex<double>(w, 0)) < 1e-8 * std::max(1.0, std::abs(w))) ++hits;
        if (hits != 1) return "root " + num(w) + " matched " + std::to_string(hits) + " times";
      }
      return "ok";
    });
  }
  run.run("construction", "simplex_n3_rejected", []() -> std::string {
    try {
      simplex_vertices(3);
    } catch (const InvalidInput&) {
      return "ok";
    }
    return "simplex with N = 3 was accepted";
  });
}

void topology_checks(Runner& run, const std::string& name, const std::function<PointConfiguration()>& make,
                     const VerifyOptions& opts) {
  std::optional<PointConfiguration> cfg;
  std::optional<CriticalSet> set;
  std::optional<MergeTree> tree;
  run.run("topology", name + "/merge-tree", [&]() -> std::string {
    cfg.emplace(make());
    if (cfg->dimension() != 3) throw InvalidInput("topology checks need N = 3");
    set.emplace(find_critical_points(*cfg, opts.solver));
    tree.emplace(merge_tree(*cfg, *set));
    if (!tree->anomalies.empty()) return tree->anomalies.front();
    const std::size_t L = static_cast<std::size_t>(set->r + set->h);
    if (set->global_morse && set->span_dimension >= 3 &&
        (tree->leaves.size() != L || tree->merges.size() != L - 1))
      return "tree has " + std::to_string(tree->leaves.size()) + " leaves and " +
             std::to_string(tree->merges.size()) + " merges";
    return "ok: " + topological_type(*tree);
  });
  if (!tree) return;
  run.run("topology", name + "/large-level-sphere", [&]() -> std::string {
    double top = 0;
    for (const auto& p : set->points)
      if (p.kind != CriticalKind::absolute_minimum) top = std::max(top, p.value);
    const auto mesh = extract_level_set(*cfg, top + 1.0, opts.resolution);
    const auto t = euler_characteristic(mesh);
    if (t.size() != 1) return std::to_string(t.size()) + " components above the top critical value";
    if (!t[0].watertight || t[0].euler != 2) return "component is not a watertight sphere";
    return "ok";
  });
  run.run("topology", name + "/mesh-vs-tree", [&]() -> std::string {
    const auto levels = sample_regular_levels(*cfg, *set, opts.levels, opts.resolution);
    if (levels.empty()) return "no resolvable regular levels";
    const auto rows = betti_trace(*cfg, *tree, levels, opts.resolution);
    for (const auto& r : rows) {
      if (!r.consistent)
        return "level " + num(r.level) + ": " + std::to_string(r.components) + " components, tree says " +
               std::to_string(r.expected_components);
      for (std::size_t i = 0; i < r.euler.size(); ++i)
        if (r.watertight[i] && r.euler[i] != 2) return "level " + num(r.level) + ": component with chi " +
                                                       std::to_string(r.euler[i]);
    }
    return "ok: " + std::to_string(rows.size()) + " levels";
  });
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opts) {
  const auto& s = opts.suite;
  if (s != "all" && s != "core" && s != "topology" && s != "construction")
    throw InvalidInput("unknown suite '" + s + "'");
  opts.solver.validate();
  std::vector<CheckResult> results;
  Runner run(results);
  const bool core = s == "all" || s == "core";
  const bool topo = s == "all" || s == "topology";
  const bool cons = s == "all" || s == "construction";

  if (opts.points_path) {
    const std::string path = *opts.points_path;
    auto make = [path] { return read_configuration(path); };
    if (core || cons) core_checks(run, "input", make, opts.solver);
    if (topo) topology_checks(run, "input", make, opts);
    return results;
  }
  const auto fams = builtin_families();
  if (core)
    for (const auto& f : fams) core_checks(run, f.name, [&f] { return f.c.config; }, opts.solver);
  if (cons) {
    for (const auto& f : fams) construction_checks(run, f, opts.solver);
    aux_checks(run);
  }
  if (topo)
    for (const auto& f : fams)
      if (f.name == "tetrahedron" || f.name == "cube" || f.name == "octa_six" || f.name == "hypercube3" ||
          f.name == "prism1.25" || f.name == "preassigned2")
        topology_checks(run, f.name, [&f] { return f.c.config; }, opts);
  return results;
}

int verify_exit_code(const std::vector<CheckResult>& results) {
  bool fail = false, other = false;
  for (const auto& r : results) {
    if (r.outcome == CheckOutcome::fail) fail = true;
    if (r.outcome == CheckOutcome::input_error || r.outcome == CheckOutcome::numerical_error) other = true;
  }
  return fail ? 2 : other ? 1 : 0;
}

namespace {
std::string xml_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '&': o += "&amp;"; break;
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}
}  // namespace

void write_junit(const std::vector<CheckResult>& results, std::ostream& os) {
  int failures = 0, errors = 0;
  double total = 0;
  for (const auto& r : results) {
    failures += r.outcome == CheckOutcome::fail;
    errors += r.outcome == CheckOutcome::input_error || r.outcome == CheckOutcome::numerical_error;
    total += r.seconds;
  }
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuites tests=\"" << results.size() << "\" failures=\"" << failures << "\" errors=\"" << errors
     << "\" time=\"" << total << "\">\n";
  os << "  <testsuite name=\"lemniscate-verify\" tests=\"" << results.size() << "\" failures=\"" << failures
     << "\" errors=\"" << errors << "\">\n";
  for (const auto& r : results) {
    os << "    <testcase classname=\"" << xml_escape(r.suite) << "\" name=\"" << xml_escape(r.name) << "\" time=\""
       << r.seconds << "\"";
    if (r.passed()) {
      os << "/>\n";
      continue;
    }
    const char* tag = r.outcome == CheckOutcome::fail ? "failure" : "error";
    os << ">\n      <" << tag << " message=\"" << xml_escape(r.message) << "\"/>\n    </testcase>\n";
  }
  os << "  </testsuite>\n</testsuites>\n";
}

}  // namespace lemniscate
