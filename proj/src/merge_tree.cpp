#include "lemniscate/merge_tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "lemniscate/error.hpp"

namespace lemniscate {

int MergeTree::cut_count(double c) const {
  int n = 0;
  for (const auto& l : leaves)
    if (l.value < c) ++n;
  for (const auto& m : merges)
    if (m.value < c) --n;
  return n;
}

double MergeTree::node_value(int node) const {
  const int L = static_cast<int>(leaves.size());
  return node < L ? leaves[static_cast<std::size_t>(node)].value : merges[static_cast<std::size_t>(node - L)].value;
}

namespace {

// Steepest descent until within `capture` of a target; returns its index or -1.
int descend(const PointConfiguration& cfg, Vec x, const std::vector<Vec>& targets, double capture,
            std::vector<Vec>& trail) {
  const double diam = cfg.scale();
  const double cap = 0.05 * diam;
  double alpha = 1e-3 * diam;
  double fx = potential(cfg, x);
  for (int step = 0; step < 100000; ++step) {
    for (std::size_t t = 0; t < targets.size(); ++t)
      if ((x - targets[t]).norm() <= capture) return static_cast<int>(t);
    if (step % 1000 == 0) trail.push_back(x);
    const Vec g = gradient(cfg, x);
    const Mat H = hessian(cfg, x);
    Eigen::LLT<Mat> llt(H);
    if (llt.info() == Eigen::Success) {
      const Vec dx = -llt.solve(g);
      if (dx.norm() <= cap) {
        const Vec xn = x + dx;
        const double fn = potential(cfg, xn);
        if (fn < fx) {
          x = xn;
          fx = fn;
          continue;
        }
      }
    }
    const double gn = g.norm();
    if (gn == 0) return -1;
    const Vec xn = x - (alpha / gn) * g;
    const double fn = potential(cfg, xn);
    if (fn < fx) {
      x = xn;
      fx = fn;
      alpha = std::min(alpha * 1.5, cap);
    } else {
      alpha *= 0.5;
      if (alpha < 1e-15 * diam) return -1;
    }
  }
  return -1;
}

struct DSU {
  std::vector<int> p;
  explicit DSU(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[static_cast<std::size_t>(x)] != x) x = p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
    return x;
  }
};

}  // namespace

MergeTree merge_tree(const PointConfiguration& cfg, const CriticalSet& set) {
  if (!set.local_morse) throw PreconditionFailed("merge_tree requires a local Morse critical set");
  MergeTree tree;
  tree.value_tolerance = set.certification.value_separation;
  std::vector<Vec> targets;
  std::vector<int> saddle_idx;
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    const auto& p = set.points[i];
    if (p.kind == CriticalKind::absolute_minimum || p.kind == CriticalKind::local_minimum) {
      tree.leaves.push_back({static_cast<int>(i), p.kind == CriticalKind::absolute_minimum, p.value, p.location});
      targets.push_back(p.location);
    } else if (p.kind == CriticalKind::saddle) {
      saddle_idx.push_back(static_cast<int>(i));
    }
  }
  std::stable_sort(saddle_idx.begin(), saddle_idx.end(), [&](int a, int b) {
    return set.points[static_cast<std::size_t>(a)].value < set.points[static_cast<std::size_t>(b)].value;
  });

  const double diam = cfg.scale();
  double capture = 1e-3 * diam;
  for (std::size_t a = 0; a < targets.size(); ++a)
    for (std::size_t b = a + 1; b < targets.size(); ++b) capture = std::min(capture, 0.25 * (targets[a] - targets[b]).norm());
  for (int si : saddle_idx)
    for (const auto& t : targets) capture = std::min(capture, 0.25 * (set.points[static_cast<std::size_t>(si)].location - t).norm());

  const int L = static_cast<int>(tree.leaves.size());
  DSU dsu(static_cast<std::size_t>(L) + saddle_idx.size());
  std::vector<int> top(static_cast<std::size_t>(L) + saddle_idx.size());
  std::iota(top.begin(), top.end(), 0);  // representative -> current top node

  for (int si : saddle_idx) {
    const auto& sp = set.points[static_cast<std::size_t>(si)];
    const Vec v = sp.eigenvectors.col(0);
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& t : targets) dmin = std::min(dmin, (sp.location - t).norm());
    const double eps = std::min(1e-4 * diam, 0.05 * dmin);
    int ends[2];
    for (int side = 0; side < 2; ++side) {
      std::vector<Vec> trail;
      const Vec start = sp.location + (side == 0 ? eps : -eps) * v;
      ends[side] = descend(cfg, start, targets, capture, trail);
      if (ends[side] < 0) {
        std::ostringstream os;
        os << "steepest descent from saddle " << si << " did not reach a known minimum; trajectory:";
        for (const auto& q : trail) os << " (" << q.transpose() << ")";
        throw NumericalFailure(os.str());
      }
    }
    const int ra = dsu.find(ends[0]), rb = dsu.find(ends[1]);
    if (ra == rb) {
      tree.anomalies.push_back("topology anomaly: both descents from saddle " + std::to_string(si) +
                               " reach the same sublevel component");
      continue;
    }
    const int node = L + static_cast<int>(tree.merges.size());
    tree.merges.push_back({si, sp.value, sp.location, top[static_cast<std::size_t>(ra)], top[static_cast<std::size_t>(rb)]});
    const int nr = std::min(ra, rb);
    dsu.p[static_cast<std::size_t>(std::max(ra, rb))] = nr;
    top[static_cast<std::size_t>(nr)] = node;
  }
  if (tree.merges.empty()) {
    tree.root = L == 1 ? 0 : -1;
  } else {
    tree.root = L + static_cast<int>(tree.merges.size()) - 1;
  }
  if (static_cast<int>(tree.merges.size()) != L - 1) {
    tree.anomalies.push_back("merge tree is a forest: " + std::to_string(L) + " leaves, " +
                             std::to_string(tree.merges.size()) + " merges");
  }
  return tree;
}

std::string topological_type(const MergeTree& tree) {
  std::vector<double> vals;
  for (const auto& l : tree.leaves)
    if (!l.pole) vals.push_back(l.value);
  for (const auto& m : tree.merges) vals.push_back(m.value);
  std::sort(vals.begin(), vals.end());
  std::vector<double> distinct;
  for (double v : vals)
    if (distinct.empty() || v - distinct.back() > tree.value_tolerance) distinct.push_back(v);
  auto rank = [&](double v) {
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      if (std::abs(distinct[i] - v) < bd) {
        bd = std::abs(distinct[i] - v);
        best = static_cast<int>(i);
      }
    }
    return best;
  };
  const int L = static_cast<int>(tree.leaves.size());
  using Enc = std::pair<double, std::string>;
  std::function<Enc(int)> enc;
  // Children of a merge, with equal-rank merges below it spliced in so that
  // simultaneous merges encode the same whatever order they were processed in.
  std::function<void(int, int, std::vector<Enc>&)> gather = [&](int node, int r, std::vector<Enc>& out) {
    if (node >= L) {
      const auto& m = tree.merges[static_cast<std::size_t>(node - L)];
      if (rank(m.value) == r) {
        gather(m.left, r, out);
        gather(m.right, r, out);
        return;
      }
    }
    out.push_back(enc(node));
  };
  enc = [&](int node) -> Enc {
    if (node < L) {
      const auto& l = tree.leaves[static_cast<std::size_t>(node)];
      if (l.pole) return {-std::numeric_limits<double>::infinity(), "P"};
      return {l.value, "m" + std::to_string(rank(l.value))};
    }
    const auto& m = tree.merges[static_cast<std::size_t>(node - L)];
    const int r = rank(m.value);
    std::vector<Enc> kids;
    gather(m.left, r, kids);
    gather(m.right, r, kids);
    std::sort(kids.begin(), kids.end());
    std::string s = "s" + std::to_string(r) + "(";
    for (std::size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + kids[i].second;
    return {kids.front().first, s + ")"};
  };
  // Roots of the forest: nodes that are nobody's child.
  std::vector<bool> child(static_cast<std::size_t>(L) + tree.merges.size(), false);
  for (const auto& m : tree.merges) {
    child[static_cast<std::size_t>(m.left)] = true;
    child[static_cast<std::size_t>(m.right)] = true;
  }
  std::vector<std::pair<double, std::string>> roots;
  for (std::size_t n = 0; n < child.size(); ++n)
    if (!child[n]) roots.push_back(enc(static_cast<int>(n)));
  std::sort(roots.begin(), roots.end());
  std::string out;
  for (std::size_t i = 0; i < roots.size(); ++i) out += (i ? "|" : "") + roots[i].second;
  return out;
}

std::vector<BettiRow> betti_trace(const PointConfiguration& cfg, const MergeTree& tree,
                                  const std::vector<double>& levels, int resolution) {
  std::vector<BettiRow> rows;
  for (double c : levels) {
    const LevelSetMesh mesh = extract_level_set(cfg, c, resolution);
    BettiRow row;
    row.level = c;
    row.components = mesh.component_count;
    for (const auto& t : euler_characteristic(mesh)) {
      row.euler.push_back(t.euler);
      row.watertight.push_back(t.watertight);
    }
    row.expected_components = tree.cut_count(c);
    row.consistent = row.expected_components == row.components;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> sample_regular_levels(const PointConfiguration& cfg, const CriticalSet& set, int count,
                                          int resolution) {
  std::vector<double> vals;
  for (const auto& p : set.points)
    if (p.kind != CriticalKind::absolute_minimum) vals.push_back(p.value);
  std::sort(vals.begin(), vals.end());
  std::vector<double> distinct;
  for (double v : vals)
    if (distinct.empty() || v - distinct.back() > 1e-9) distinct.push_back(v);
  const double spread = distinct.empty() ? 1.0 : std::max(distinct.back() - distinct.front(), 1.0);
  std::vector<std::pair<double, double>> gaps;
  if (distinct.empty()) {
    gaps.push_back({-3.0, 3.0});
  } else {
    gaps.push_back({distinct.front() - 3.0, distinct.front()});
    for (std::size_t i = 1; i < distinct.size(); ++i) gaps.push_back({distinct[i - 1], distinct[i]});
    gaps.push_back({distinct.back(), distinct.back() + 3.0});
  }
  // log of the product of squared distances from w_j to the other points
  std::vector<double> S;
  for (int j = 0; j < cfg.r(); ++j) {
    double s = 0;
    for (int k = 0; k < cfg.r(); ++k)
      if (k != j) s += std::log((cfg.point(j) - cfg.point(k)).squaredNorm());
    S.push_back(s);
  }
  std::vector<double> ok;
  for (const auto& [a, b] : gaps) {
    for (int k = 1; k <= 9; ++k) {
      const double c = a + (b - a) * k / 10.0;
      bool good = true;
      for (double v : distinct) good = good && std::abs(c - v) >= 1e-4 * spread;
      if (!good) continue;
      const Box3 box = level_set_box(cfg, c, resolution);
      const double hgrid = (box.hi - box.lo).maxCoeff() / resolution;
      const double need = 3.0 * hgrid;
      for (double s : S) good = good && std::exp((c - s) / 2.0) >= need;
      for (const auto& p : set.points) {
        if (!good) break;
        if (p.kind == CriticalKind::local_minimum && c > p.value) {
          good = std::sqrt(2.0 * (c - p.value) / p.spectrum.maxCoeff()) >= need;
        } else if (p.kind == CriticalKind::saddle) {
          if (c < p.value) good = std::sqrt(2.0 * (p.value - c) / -p.spectrum(0)) >= need;
          else good = std::sqrt(2.0 * (c - p.value) / p.spectrum(1)) >= need;
        }
      }
      if (good) ok.push_back(c);
    }
  }
  if (static_cast<int>(ok.size()) <= count) return ok;
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const std::size_t idx = static_cast<std::size_t>(std::llround(double(i) * (ok.size() - 1) / std::max(count - 1, 1)));
    out.push_back(ok[idx]);
  }
  return out;
}

}  // namespace lemniscate
