#include "lemniscate/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lemniscate/error.hpp"

namespace lemniscate {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void emit(const json& j, std::string& out, int indent, int depth) {
  const auto nl = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      break;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // Flat numeric arrays stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && e.is_number();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        if (flat) {
          if (!first && indent >= 0) out += ' ';
        } else {
          nl(depth + 1);
        }
        emit(e, out, indent, depth + 1);
        first = false;
      }
      if (!flat) nl(depth);
      out += ']';
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        nl(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(it.value(), out, indent, depth + 1);
        first = false;
      }
      nl(depth);
      out += '}';
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  emit(j, out, indent, 0);
  return out;
}

PointConfiguration configuration_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("points"))
    throw InvalidInput("configuration JSON needs \"dimension\" and \"points\"");
  if (!j["dimension"].is_number_integer()) throw InvalidInput("\"dimension\" must be an integer");
  const int N = j["dimension"].get<int>();
  if (N < 1) throw InvalidInput("\"dimension\" must be positive");
  if (!j["points"].is_array()) throw InvalidInput("\"points\" must be an array");
  std::vector<Vec> pts;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || static_cast<int>(p.size()) != N)
      throw InvalidInput("every point must be an array of " + std::to_string(N) + " numbers");
    Vec v(N);
    for (int i = 0; i < N; ++i) {
      if (!p[static_cast<std::size_t>(i)].is_number()) throw InvalidInput("point coordinates must be numbers");
      v(i) = p[static_cast<std::size_t>(i)].get<double>();
    }
    pts.push_back(std::move(v));
  }
  return PointConfiguration(std::move(pts));
}

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json configuration_to_json(const PointConfiguration& cfg) {
  json j;
  j["dimension"] = cfg.dimension();
  json pts = json::array();
  for (const auto& p : cfg.points()) pts.push_back(to_json(p));
  j["points"] = std::move(pts);
  return j;
}

PointConfiguration read_configuration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
  return configuration_from_json(j);
}

json to_json(const SolverOptions& o) {
  return json{{"grad_tol", o.grad_tol},
              {"dedup_radius", o.dedup_radius},
              {"eig_zero_threshold", o.eig_zero_threshold},
              {"max_newton_iters", o.max_newton_iters},
              {"grid_density", o.grid_density},
              {"max_grid_seeds", o.max_grid_seeds},
              {"random_seed_count", o.random_seed_count},
              {"fixed_point_starts", o.fixed_point_starts},
              {"fixed_point_iters", o.fixed_point_iters},
              {"rng_seed", o.rng_seed},
              {"saddle_pass", o.saddle_pass}};
}

json to_json(const CriticalSet& set) {
  json j;
  j["r"] = set.r;
  j["h"] = set.h;
  j["saddles"] = set.s;
  j["degenerate"] = set.degenerate;
  j["span_dimension"] = set.span_dimension;
  j["local_morse"] = set.local_morse;
  j["global_morse"] = set.global_morse;
  json pts = json::array();
  for (const auto& p : set.points) {
    json q;
    q["location"] = to_json(p.location);
    q["value"] = p.value;
    q["negativity"] = p.negativity;
    q["nullity"] = p.nullity;
    q["spectrum"] = to_json(p.spectrum);
    q["kind"] = to_string(p.kind);
    q["grad_norm"] = p.grad_norm;
    q["hull_margin"] = p.hull_margin;
    pts.push_back(std::move(q));
  }
  j["critical_points"] = std::move(pts);
  const auto& c = set.certification;
  j["certification"] = json{{"seeds",
                             {{"grid", c.seeds_grid},
                              {"random", c.seeds_random},
                              {"fixed_point", c.seeds_fixed_point},
                              {"pairs", c.seeds_pairs},
                              {"triples", c.seeds_triples},
                              {"segment", c.seeds_segment}}},
                            {"converged", c.converged},
                            {"dropped", c.dropped},
                            {"flagged_clusters", c.flagged_clusters},
                            {"dedup_radius", c.dedup_radius},
                            {"grad_tolerance", c.grad_tolerance},
                            {"max_residual", c.max_residual},
                            {"min_hull_margin", c.min_hull_margin},
                            {"value_separation", c.value_separation},
                            {"completeness", "empirical"}};
  return j;
}

json to_json(const ReferenceData& ref) {
  json j;
  auto list = [](const std::vector<Vec>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
  };
  j["local_minima"] = list(ref.local_minima);
  j["saddles"] = list(ref.saddles);
  j["degenerate"] = list(ref.degenerate);
  j["h"] = ref.h ? json(*ref.h) : json(nullptr);
  j["saddle_count"] = ref.saddle_count ? json(*ref.saddle_count) : json(nullptr);
  json s = json::object();
  for (const auto& [k, v] : ref.scalars) s[k] = v;
  j["scalars"] = std::move(s);
  j["notes"] = ref.notes;
  return j;
}

json to_json(const Construction& c) {
  json j = configuration_to_json(c.config);
  j["family"] = c.family;
  json p = json::object();
  for (const auto& [k, v] : c.parameters) p[k] = v;
  j["parameters"] = std::move(p);
  j["reference"] = to_json(c.reference);
  return j;
}

json to_json(const MergeTree& tree) {
  json j;
  json leaves = json::array();
  for (const auto& l : tree.leaves)
    leaves.push_back(json{{"critical_index", l.critical_index},
                          {"pole", l.pole},
                          {"value", l.value},
                          {"location", to_json(l.location)}});
  json merges = json::array();
  for (const auto& m : tree.merges)
    merges.push_back(json{{"critical_index", m.critical_index},
                          {"value", m.value},
                          {"left", m.left},
                          {"right", m.right},
                          {"location", to_json(m.location)}});
  j["leaves"] = std::move(leaves);
  j["merges"] = std::move(merges);
  j["root"] = tree.root;
  j["type"] = topological_type(tree);
  j["type_note"] = "value-ordered merge tree of sublevel sets; a computable proxy for the topological type";
  j["anomalies"] = tree.anomalies;
  return j;
}

json to_json(const HessianDecomposition& d) {
  auto cm = [](const CMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  return json{{"Q", cm(d.Q)}, {"L", cm(d.L.matrix)}};
}

void write_critical_csv(const CriticalSet& set, std::ostream& os) {
  const int N = set.points.empty() ? 0 : static_cast<int>(set.points.front().location.size());
  os << "index,kind";
  for (int i = 0; i < N; ++i) os << ",x" << i + 1;
  os << ",value,negativity,nullity,positivity,grad_norm,hull_margin,spectrum\n";
  for (std::size_t k = 0; k < set.points.size(); ++k) {
    const auto& p = set.points[k];
    os << k << ',' << to_string(p.kind);
    for (int i = 0; i < N; ++i) os << ',' << format_double(p.location(i));
    os << ',' << format_double(p.value) << ',' << p.negativity << ',' << p.nullity << ',' << p.positivity << ','
       << format_double(p.grad_norm) << ',' << format_double(p.hull_margin) << ",\"";
    for (Eigen::Index i = 0; i < p.spectrum.size(); ++i) os << (i ? " " : "") << format_double(p.spectrum(i));
    os << "\"\n";
  }
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& os) {
  os << "parameter,branch,location,lambda_before,lambda_after\n";
  for (const auto& b : sweep.bifurcations) {
    os << format_double(b.parameter) << ',' << b.branch << ",\"";
    for (Eigen::Index i = 0; i < b.location.size(); ++i) os << (i ? " " : "") << format_double(b.location(i));
    os << "\"," << format_double(b.lambda_before) << ',' << format_double(b.lambda_after) << '\n';
  }
}

void write_betti_csv(const std::vector<BettiRow>& rows, std::ostream& os) {
  os << "c,components,chi_list,watertight,expected_components,consistent\n";
  for (const auto& r : rows) {
    os << format_double(r.level) << ',' << r.components << ",\"";
    for (std::size_t i = 0; i < r.euler.size(); ++i) os << (i ? " " : "") << r.euler[i];
    bool wt = true;
    for (bool w : r.watertight) wt = wt && w;
    os << "\"," << (wt ? "true" : "false") << ',' << r.expected_components << ',' << (r.consistent ? "true" : "false")
       << '\n';
  }
}

json RunManifest::to_json() const {
  return json{{"command", command}, {"input", input},     {"options", options},
              {"outputs", outputs}, {"rng_seed", rng_seed}, {"version", version}};
}

void RunManifest::write(const std::filesystem::path& dir) const {
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  out << dump_json(to_json()) << '\n';
}

}  // namespace lemniscate
