#include "lemniscate/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "lemniscate/bifurcation.hpp"
#include "lemniscate/error.hpp"
#include "lemniscate/level_set.hpp"
#include "lemniscate/merge_tree.hpp"
#include "lemniscate/report.hpp"
#include "lemniscate/verify.hpp"

namespace fs = std::filesystem;

namespace lemniscate {
namespace {

struct Common {
  std::string points;
  std::string out;
  std::uint64_t seed = SolverOptions{}.rng_seed;
  int grid_density = SolverOptions{}.grid_density;
  int random_seeds = SolverOptions{}.random_seed_count;
  double grad_tol = SolverOptions{}.grad_tol;
  double dedup_radius = SolverOptions{}.dedup_radius;

  SolverOptions solver() const {
    SolverOptions o;
    o.rng_seed = seed;
    o.grid_density = grid_density;
    o.random_seed_count = random_seeds;
    o.grad_tol = grad_tol;
    o.dedup_radius = dedup_radius;
    o.validate();
    return o;
  }
};

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed for solver seeding");
  cmd->add_option("--grid-density", c.grid_density, "grid seeds per axis");
  cmd->add_option("--random-seeds", c.random_seeds, "random hull seeds");
  cmd->add_option("--grad-tol", c.grad_tol, "relative gradient tolerance");
  cmd->add_option("--dedup-radius", c.dedup_radius, "merge radius relative to the diameter");
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput("not a number: '" + item + "'");
    }
  }
  return v;
}

double top_critical_value(const CriticalSet& set) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& p : set.points)
    if (p.kind != CriticalKind::absolute_minimum) top = std::max(top, p.value);
  return top;
}

std::string plot_script(const PointConfiguration& cfg, const std::vector<Contour2D>& contours) {
  std::ostringstream os;
  os << "# Contour plot of the logarithmic potential; run with python3.\n"
        "import matplotlib\n"
        "matplotlib.use('Agg')\n"
        "import matplotlib.pyplot as plt\n\n"
        "points = [";
  for (const auto& p : cfg.points()) os << "(" << format_double(p(0)) << ", " << format_double(p(1)) << "), ";
  os << "]\nlevels = [\n";
  for (const auto& c : contours) {
    os << "    (" << format_double(c.level) << ", [\n";
    for (const auto& line : c.polylines) {
      os << "        [";
      for (const auto& q : line) os << "(" << format_double(q(0)) << ", " << format_double(q(1)) << "), ";
      os << "],\n";
    }
    os << "    ]),\n";
  }
  os << "]\n\n"
        "fig, ax = plt.subplots(figsize=(6, 6))\n"
        "for level, lines in levels:\n"
        "    for line in lines:\n"
        "        xs, ys = zip(*line)\n"
        "        ax.plot(xs, ys, 'k-', lw=0.8)\n"
        "ax.plot([p[0] for p in points], [p[1] for p in points], 'ko', ms=3)\n"
        "ax.set_aspect('equal')\n"
        "ax.set_xticks([])\n"
        "ax.set_yticks([])\n"
        "fig.savefig('contour.pdf', bbox_inches='tight')\n";
  return os.str();
}

int cmd_analyze(const Common& c, const std::string& format, std::ostream& out) {
  const auto cfg = read_configuration(c.points);
  const auto opts = c.solver();
  const auto set = find_critical_points(cfg, opts);
  std::string body;
  if (format == "csv") {
    std::ostringstream os;
    write_critical_csv(set, os);
    body = os.str();
  } else {
    body = dump_json(to_json(set)) + "\n";
  }
  if (c.out.empty()) {
    out << body;
    return 0;
  }
  const auto dir = prepare_out(c.out);
  const std::string name = format == "csv" ? "critical_points.csv" : "report.json";
  write_file(dir / name, body);
  RunManifest m{"analyze", c.points, json{{"solver", to_json(opts)}, {"format", format}}, {name}, opts.rng_seed};
  m.write(dir);
  out << "r=" << set.r << " h=" << set.h << " saddles=" << set.s << " -> " << (dir / name).string() << "\n";
  return 0;
}

int cmd_construct(const std::string& family, const std::map<std::string, std::vector<double>>& params,
                  const std::string& out_dir, std::ostream& out) {
  const auto c = construct_family(family, params);
  const std::string body = dump_json(to_json(c)) + "\n";
  if (out_dir.empty()) {
    out << body;
    return 0;
  }
  const auto dir = prepare_out(out_dir);
  write_file(dir / "configuration.json", body);
  json p = json::object();
  for (const auto& [k, v] : params) p[k] = v;
  RunManifest m{"construct", family, json{{"parameters", p}}, {"configuration.json"}, 0};
  m.write(dir);
  out << c.config.r() << " points -> " << (dir / "configuration.json").string() << "\n";
  return 0;
}

int cmd_levelset(const Common& c, const std::string& level, int resolution, bool want_plot, std::ostream& out,
                 std::ostream& err) {
  const auto cfg = read_configuration(c.points);
  const int N = cfg.dimension();
  if (N > 3) {
    err << "error: level-set meshing requires N ≤ 3 (input has N = " << N << ")\n";
    return 1;
  }
  if (N < 2) {
    err << "error: level-set extraction needs N = 2 or N = 3\n";
    return 1;
  }
  if (resolution < 4) throw InvalidInput("--resolution must be at least 4");
  const auto opts = c.solver();
  const auto set = find_critical_points(cfg, opts);

  std::vector<double> values;
  for (const auto& p : set.points)
    if (p.kind != CriticalKind::absolute_minimum) values.push_back(p.value);
  double spread = 0;
  if (!values.empty()) spread = *std::max_element(values.begin(), values.end()) - *std::min_element(values.begin(), values.end());
  const double delta = 1e-3 * (spread > 0 ? spread : 1.0);

  double c0;
  if (level == "auto-above-max") {
    c0 = values.empty() ? 0.0 : top_critical_value(set) + std::max(1.0, 0.1 * spread);
  } else {
    try {
      std::size_t used = 0;
      c0 = std::stod(level, &used);
      if (used != level.size()) throw std::invalid_argument(level);
    } catch (const std::exception&) {
      throw InvalidInput("--c must be a number or auto-above-max");
    }
  }
  std::vector<double> levels{c0};
  json note = nullptr;
  for (double v : values) {
    if (std::abs(c0 - v) < delta) {
      levels = {v - delta, v + delta};
      note = json{{"requested", c0}, {"critical_value", v}, {"delta", delta}};
      break;
    }
  }

  const fs::path dir = c.out.empty() ? fs::path() : prepare_out(c.out);
  std::vector<std::string> outputs;
  json report;
  report["dimension"] = N;
  report["near_singular"] = note;
  json rows = json::array();
  if (N == 3) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const auto mesh = extract_level_set(cfg, levels[i], resolution);
      const auto topo = euler_characteristic(mesh);
      json row;
      row["c"] = levels[i];
      row["components"] = mesh.component_count;
      json comps = json::array();
      for (const auto& t : topo)
        comps.push_back(json{{"vertices", t.vertices}, {"edges", t.edges}, {"faces", t.faces},
                             {"watertight", t.watertight}, {"euler", t.euler}});
      row["component_topology"] = std::move(comps);
      if (!dir.empty()) {
        const std::string name = "levelset_" + std::to_string(i) + ".obj";
        std::ofstream f(dir / name);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        write_obj(mesh, f);
        outputs.push_back(name);
        row["obj"] = name;
      }
      rows.push_back(std::move(row));
    }
  } else {
    std::vector<Contour2D> contours;
    for (double lv : levels) {
      contours.push_back(extract_contour(cfg, lv, 2 * resolution));
      const auto& ct = contours.back();
      json lines = json::array();
      for (const auto& pl : ct.polylines) {
        json l = json::array();
        for (const auto& q : pl) l.push_back(json::array({q(0), q(1)}));
        lines.push_back(std::move(l));
      }
      rows.push_back(json{{"c", lv}, {"closed_loops", ct.closed_loops}, {"polylines", std::move(lines)}});
    }
    if (want_plot) {
      if (dir.empty()) throw InvalidInput("--plot-script needs --out");
      write_file(dir / "plot_contour.py", plot_script(cfg, contours));
      outputs.push_back("plot_contour.py");
    }
  }
  report["levels"] = std::move(rows);
  const std::string body = dump_json(report) + "\n";
  if (dir.empty()) {
    out << body;
    return 0;
  }
  const std::string name = N == 3 ? "topology.json" : "contour.json";
  write_file(dir / name, body);
  outputs.insert(outputs.begin(), name);
  RunManifest m{"levelset", c.points,
                json{{"solver", to_json(opts)}, {"resolution", resolution}, {"c", level}, {"plot_script", want_plot}},
                outputs, opts.rng_seed};
  m.write(dir);
  for (const auto& r : report["levels"]) {
    out << "c=" << format_double(r["c"].get<double>()) << " components="
        << (N == 3 ? r["components"].get<int>() : r["closed_loops"].get<int>()) << "\n";
  }
  return 0;
}

int cmd_sweep(const Common& c, const std::string& family, const std::string& a_range, std::ostream& out,
              std::ostream& err) {
  if (family != "prism") throw InvalidInput("family '" + family + "' has no continuous parameter to sweep");
  if (a_range.empty()) throw InvalidInput("sweep prism needs --a start:stop:step");
  const auto range = ParameterRange::parse(a_range);
  const auto opts = c.solver();
  const auto res = bifurcation_sweep([](double a) { return triangular_prism(a).config; }, range, opts);
  std::ostringstream csv;
  write_sweep_csv(res, csv);
  for (const auto& l : res.losses)
    err << "tracking loss: branch " << l.branch << " at a=" << format_double(l.parameter) << " (" << l.reason << ")\n";
  if (c.out.empty()) {
    out << csv.str();
    return 0;
  }
  const auto dir = prepare_out(c.out);
  write_file(dir / "bifurcations.csv", csv.str());
  std::ostringstream losses;
  losses << "branch,parameter,reason\n";
  for (const auto& l : res.losses) losses << l.branch << ',' << format_double(l.parameter) << ",\"" << l.reason << "\"\n";
  write_file(dir / "tracking_losses.csv", losses.str());
  RunManifest m{"sweep", family, json{{"solver", to_json(opts)}, {"a", a_range}},
                {"bifurcations.csv", "tracking_losses.csv"}, opts.rng_seed};
  m.write(dir);
  out << res.bifurcations.size() << " bifurcation(s) -> " << (dir / "bifurcations.csv").string() << "\n";
  return 0;
}

int cmd_trace(const Common& c, int levels, int resolution, std::ostream& out) {
  const auto cfg = read_configuration(c.points);
  const auto opts = c.solver();
  const auto set = find_critical_points(cfg, opts);
  const auto tree = merge_tree(cfg, set);
  const json tj = to_json(tree);
  std::vector<BettiRow> rows;
  if (cfg.dimension() == 3) rows = betti_trace(cfg, tree, sample_regular_levels(cfg, set, levels, resolution), resolution);
  std::ostringstream csv;
  write_betti_csv(rows, csv);
  if (c.out.empty()) {
    out << dump_json(tj) << "\n";
    if (!rows.empty()) out << csv.str();
  } else {
    const auto dir = prepare_out(c.out);
    write_file(dir / "merge_tree.json", dump_json(tj) + "\n");
    std::vector<std::string> outputs{"merge_tree.json"};
    if (!rows.empty()) {
      write_file(dir / "betti.csv", csv.str());
      outputs.push_back("betti.csv");
    }
    RunManifest m{"trace", c.points, json{{"solver", to_json(opts)}, {"levels", levels}, {"resolution", resolution}},
                  outputs, opts.rng_seed};
    m.write(dir);
    out << topological_type(tree) << "\n";
  }
  bool ok = tree.anomalies.empty();
  for (const auto& r : rows) ok = ok && r.consistent;
  return ok ? 0 : 2;
}

int cmd_verify(const Common& c, const std::string& suite, const std::string& junit, int resolution, int levels,
               std::ostream& out) {
  VerifyOptions vo;
  vo.suite = suite;
  vo.resolution = resolution;
  vo.levels = levels;
  vo.solver = c.solver();
  if (!c.points.empty()) vo.points_path = c.points;
  const auto results = run_verify(vo);
  int passed = 0;
  for (const auto& r : results) {
    passed += r.passed();
    out << (r.passed() ? "PASS " : "FAIL ") << r.suite << "/" << r.name;
    if (!r.message.empty()) out << "  " << r.message;
    out << "\n";
  }
  out << passed << "/" << results.size() << " checks passed\n";
  if (!junit.empty()) {
    std::ofstream f(junit);
    if (!f) throw std::runtime_error("cannot write " + junit);
    write_junit(results, f);
  }
  if (!c.out.empty()) {
    const auto dir = prepare_out(c.out);
    std::ofstream f(dir / "junit.xml");
    write_junit(results, f);
    RunManifest m{"verify", c.points.empty() ? "builtin families" : c.points,
                  json{{"suite", suite}, {"resolution", resolution}, {"levels", levels}, {"solver", to_json(vo.solver)}},
                  {"junit.xml"}, vo.solver.rng_seed};
    m.write(dir);
  }
  return verify_exit_code(results);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical points and level-set topology of logarithmic potentials", "lemniscate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  std::string format = "json";
  auto* analyze = app.add_subcommand("analyze", "find and classify all critical points");
  analyze->add_option("input", common.points, "configuration JSON");
  analyze->add_option("--points", common.points, "configuration JSON");
  analyze->add_option("--out", common.out, "output directory");
  analyze->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_solver_flags(analyze, common);

  std::string family;
  int n = 0;
  double a = 0;
  std::string minima, saddles, a_range;
  auto* construct = app.add_subcommand("construct", "emit a named family with its closed-form reference data");
  construct->add_option("family", family, "family name")->required();
  auto* n_opt = construct->add_option("--n", n, "dimension");
  auto* a_opt = construct->add_option("--a", a, "prism height parameter");
  construct->add_option("--minima", minima, "comma-separated minima heights");
  construct->add_option("--saddles", saddles, "comma-separated saddle heights");
  construct->add_option("--out", common.out, "output directory");

  std::string level;
  int resolution = 128;
  bool plot = false;
  auto* levelset = app.add_subcommand("levelset", "extract a level set (mesh for N=3, contour for N=2)");
  levelset->add_option("input", common.points, "configuration JSON");
  levelset->add_option("--points", common.points, "configuration JSON");
  levelset->add_option("--c", level, "level value or auto-above-max")->required();
  levelset->add_option("--resolution", resolution, "grid cells per axis");
  levelset->add_option("--out", common.out, "output directory");
  levelset->add_flag("--plot-script", plot, "write a matplotlib script for 2D contours");
  add_solver_flags(levelset, common);

  auto* sweep = app.add_subcommand("sweep", "track critical points across a family parameter");
  sweep->add_option("family", family, "family name")->required();
  sweep->add_option("--a", a_range, "start:stop:step");
  sweep->add_option("--out", common.out, "output directory");
  add_solver_flags(sweep, common);

  std::string suite = "all", junit;
  int verify_res = 64, levels = 4;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--suite", suite, "all, core, topology or construction")
      ->check(CLI::IsMember({"all", "core", "topology", "construction"}));
  verify->add_option("--junit", junit, "write a JUnit XML summary");
  verify->add_option("--points", common.points, "check one configuration instead of the built-in families");
  verify->add_option("--resolution", verify_res, "grid resolution for topology checks");
  verify->add_option("--levels", levels, "regular levels per family");
  verify->add_option("--out", common.out, "output directory");
  add_solver_flags(verify, common);

  int trace_levels = 10;
  auto* trace = app.add_subcommand("trace", "merge tree and Betti trace of sublevel sets");
  trace->add_option("input", common.points, "configuration JSON");
  trace->add_option("--points", common.points, "configuration JSON");
  trace->add_option("--levels", trace_levels, "number of sampled regular levels");
  trace->add_option("--resolution", resolution, "grid cells per axis");
  trace->add_option("--out", common.out, "output directory");
  add_solver_flags(trace, common);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    auto need_points = [&] {
      if (common.points.empty()) throw InvalidInput("missing input configuration (--points FILE)");
    };
    if (*analyze) {
      need_points();
      return cmd_analyze(common, format, out);
    }
    if (*construct) {
      std::map<std::string, std::vector<double>> params;
      if (*n_opt) params["n"] = {static_cast<double>(n)};
      if (*a_opt) params["a"] = {a};
      if (!minima.empty()) params["minima"] = parse_list(minima);
      if (!saddles.empty()) params["saddles"] = parse_list(saddles);
      return cmd_construct(family, params, common.out, out);
    }
    if (*levelset) {
      need_points();
      return cmd_levelset(common, level, resolution, plot, out, err);
    }
    if (*sweep) return cmd_sweep(common, family, a_range, out, err);
    if (*verify) return cmd_verify(common, suite, junit, verify_res, levels, out);
    if (*trace) {
      need_points();
      return cmd_trace(common, trace_levels, resolution, out);
    }
  } catch (const TheoremViolation& e) {
    err << "theorem violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace lemniscate
