#include "lemniscate/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "lemniscate/error.hpp"

namespace lemniscate {
namespace {

// Keeps grid vertices off lattice-aligned poles.
constexpr double kGridOffset = 0.1234567;
constexpr double kClamp = -1e30;

double f3(const PointConfiguration& cfg, double x, double y, double z) {
  double F = 1.0;
  for (const auto& w : cfg.points()) {
    const double dx = x - w(0), dy = y - w(1), dz = z - w(2);
    F *= dx * dx + dy * dy + dz * dz;
  }
  return F > 0 ? std::log(F) : kClamp;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[static_cast<std::size_t>(x)] != x) {
      p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
      x = p[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

Box3 initial_box(const PointConfiguration& cfg, double c) {
  const Vec lo = cfg.bbox_min(), hi = cfg.bbox_max();
  const Eigen::Vector3d center = 0.5 * (lo + hi);
  Eigen::Vector3d half = 0.5 * (hi - lo);
  half = half.cwiseMax(0.5 * cfg.scale());
  double fmax = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 8; ++k) {
    Eigen::Vector3d q;
    for (int a = 0; a < 3; ++a) q(a) = ((k >> a) & 1) ? hi(a) : lo(a);
    const double v = potential(cfg, q);
    if (std::isfinite(v)) fmax = std::max(fmax, v);
  }
  if (!std::isfinite(fmax)) fmax = potential(cfg, center);
  const double factor = 1.0 + std::exp(std::min((c - fmax) / (2.0 * cfg.r()), 50.0));
  half *= factor;
  return {center - half, center + half};
}

bool boundary_above(const PointConfiguration& cfg, const Box3& b, double c, int res) {
  const Eigen::Vector3d h = (b.hi - b.lo) / res;
  for (int face = 0; face < 6; ++face) {
    const int axis = face / 2;
    const int fixed = (face % 2) ? res : 0;
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    for (int i = 0; i <= res; ++i)
      for (int j = 0; j <= res; ++j) {
        Eigen::Vector3d q;
        q(axis) = b.lo(axis) + fixed * h(axis);
        q(u) = b.lo(u) + i * h(u);
        q(v) = b.lo(v) + j * h(v);
        if (!(f3(cfg, q(0), q(1), q(2)) > c)) return false;
      }
  }
  return true;
}

}  // namespace

Box3 level_set_box(const PointConfiguration& cfg, double c, int resolution) {
  if (cfg.dimension() != 3) throw InvalidInput("level-set meshing requires N = 3 (use contours for N = 2)");
  if (resolution < 2) throw InvalidInput("resolution must be at least 2");
  Box3 b = initial_box(cfg, c);
  for (int attempt = 0; attempt < 60; ++attempt) {
    // Shift by a fraction of a cell so no grid vertex sits exactly on a pole.
    Box3 shifted{b.lo + Eigen::Vector3d::Constant(kGridOffset) .cwiseProduct((b.hi - b.lo) / resolution), Eigen::Vector3d()};
    shifted.hi = shifted.lo + (b.hi - b.lo);
    if (boundary_above(cfg, shifted, c, resolution)) return shifted;
    const Eigen::Vector3d center = 0.5 * (b.lo + b.hi);
    const Eigen::Vector3d half = 0.75 * (b.hi - b.lo);
    b = {center - half, center + half};
  }
  throw NumericalFailure("level set reaches the sampling box boundary; box could not be enlarged enough");
}

void label_components(LevelSetMesh& mesh) {
  UnionFind uf(mesh.vertices.size());
  for (const auto& t : mesh.triangles) {
    uf.unite(t[0], t[1]);
    uf.unite(t[1], t[2]);
  }
  std::unordered_map<int, int> ids;
  mesh.component_labels.clear();
  for (const auto& t : mesh.triangles) {
    const int root = uf.find(t[0]);
    auto it = ids.find(root);
    if (it == ids.end()) it = ids.emplace(root, static_cast<int>(ids.size())).first;
    mesh.component_labels.push_back(it->second);
  }
  mesh.component_count = static_cast<int>(ids.size());
}

LevelSetMesh extract_level_set(const PointConfiguration& cfg, double c, int resolution) {
  if (cfg.dimension() != 3) throw InvalidInput("level-set meshing requires N = 3 (use contours for N = 2)");
  if (!std::isfinite(c)) throw InvalidInput("level must be finite");
  LevelSetMesh mesh;
  mesh.level = c;
  mesh.resolution = resolution;
  mesh.box = level_set_box(cfg, c, resolution);
  const int n = resolution + 1;
  const Eigen::Vector3d h = (mesh.box.hi - mesh.box.lo) / resolution;
  const Eigen::Vector3d lo = mesh.box.lo;
  auto gid = [n](int i, int j, int k) { return static_cast<long>(i) + n * (static_cast<long>(j) + static_cast<long>(n) * k); };
  auto pos = [&](long id) {
    const long i = id % n, j = (id / n) % n, k = id / (static_cast<long>(n) * n);
    return Eigen::Vector3d(lo(0) + i * h(0), lo(1) + j * h(1), lo(2) + k * h(2));
  };

  std::vector<double> vals(static_cast<std::size_t>(n) * n * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        vals[static_cast<std::size_t>(gid(i, j, k))] = f3(cfg, lo(0) + i * h(0), lo(1) + j * h(1), lo(2) + k * h(2));

  std::unordered_map<long, int> edge_vertex;
  auto edge_point = [&](long a, long b, int code) {
    // a is inside (f < c), b outside; the key uses the lower grid index.
    const long lowv = std::min(a, b);
    const long key = lowv * 8 + code;
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;
    const double fa = vals[static_cast<std::size_t>(a)], fb = vals[static_cast<std::size_t>(b)];
    const double t = (c - fa) / (fb - fa);
    mesh.vertices.push_back(pos(a) + t * (pos(b) - pos(a)));
    const int id = static_cast<int>(mesh.vertices.size()) - 1;
    edge_vertex.emplace(key, id);
    return id;
  };

  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int k = 0; k < resolution; ++k)
    for (int j = 0; j < resolution; ++j)
      for (int i = 0; i < resolution; ++i) {
        long corner[8];
        int inside_mask = 0;
        for (int q = 0; q < 8; ++q) {
          corner[q] = gid(i + (q & 1), j + ((q >> 1) & 1), k + ((q >> 2) & 1));
          if (vals[static_cast<std::size_t>(corner[q])] < c) inside_mask |= 1 << q;
        }
        if (inside_mask == 0 || inside_mask == 255) continue;
        for (const auto& p : perms) {
          const int tv[4] = {0, 1 << p[0], (1 << p[0]) | (1 << p[1]), 7};
          int in[4], out[4], ni = 0, no = 0;
          for (int q : tv) {
            if (inside_mask & (1 << q)) in[ni++] = q;
            else out[no++] = q;
          }
          if (ni == 0 || no == 0) continue;
          // Kuhn edges join corners whose bit sets are nested; the xor is the offset.
          auto ep = [&](int qa, int qb) { return edge_point(corner[qa], corner[qb], qa ^ qb); };
          Eigen::Vector3d cin = Eigen::Vector3d::Zero(), cout = Eigen::Vector3d::Zero();
          for (int a = 0; a < ni; ++a) cin += pos(corner[in[a]]) / ni;
          for (int a = 0; a < no; ++a) cout += pos(corner[out[a]]) / no;
          const Eigen::Vector3d up = cout - cin;
          auto emit = [&](int a, int b, int d) {
            const Eigen::Vector3d nrm = (mesh.vertices[static_cast<std::size_t>(b)] - mesh.vertices[static_cast<std::size_t>(a)])
                                            .cross(mesh.vertices[static_cast<std::size_t>(d)] - mesh.vertices[static_cast<std::size_t>(a)]);
            if (nrm.dot(up) < 0) std::swap(b, d);
            mesh.triangles.push_back({a, b, d});
          };
          if (ni == 1) {
            emit(ep(in[0], out[0]), ep(in[0], out[1]), ep(in[0], out[2]));
          } else if (ni == 3) {
            emit(ep(in[0], out[0]), ep(in[1], out[0]), ep(in[2], out[0]));
          } else {
            const int q0 = ep(in[0], out[0]), q1 = ep(in[0], out[1]), q2 = ep(in[1], out[1]), q3 = ep(in[1], out[0]);
            emit(q0, q1, q2);
            emit(q0, q2, q3);
          }
        }
      }
  label_components(mesh);
  return mesh;
}

std::vector<ComponentTopology> euler_characteristic(const LevelSetMesh& mesh) {
  std::vector<ComponentTopology> out(static_cast<std::size_t>(mesh.component_count));
  std::vector<std::map<std::pair<int, int>, int>> edges(out.size());
  std::vector<std::vector<int>> verts(out.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto comp = static_cast<std::size_t>(mesh.component_labels[t]);
    const auto& tri = mesh.triangles[t];
    ++out[comp].faces;
    for (int e = 0; e < 3; ++e) {
      const int a = tri[static_cast<std::size_t>(e)], b = tri[static_cast<std::size_t>((e + 1) % 3)];
      ++edges[comp][{std::min(a, b), std::max(a, b)}];
      verts[comp].push_back(a);
    }
  }
  for (std::size_t comp = 0; comp < out.size(); ++comp) {
    auto& v = verts[comp];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    out[comp].component = static_cast<int>(comp);
    out[comp].vertices = static_cast<long>(v.size());
    out[comp].edges = static_cast<long>(edges[comp].size());
    out[comp].watertight = std::all_of(edges[comp].begin(), edges[comp].end(), [](const auto& kv) { return kv.second == 2; });
    out[comp].euler = static_cast<int>(out[comp].vertices - out[comp].edges + out[comp].faces);
  }
  return out;
}

void write_obj(const LevelSetMesh& mesh, std::ostream& os) {
  os.precision(17);
  os << "# level " << mesh.level << "\n";
  for (const auto& v : mesh.vertices) os << "v " << v(0) << ' ' << v(1) << ' ' << v(2) << "\n";
  for (int comp = 0; comp < mesh.component_count; ++comp) {
    os << "o component_" << comp << "\n";
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
      if (mesh.component_labels[t] != comp) continue;
      const auto& tri = mesh.triangles[t];
      os << "f " << tri[0] + 1 << ' ' << tri[1] + 1 << ' ' << tri[2] + 1 << "\n";
    }
  }
}

Contour2D extract_contour(const PointConfiguration& cfg, double c, int resolution) {
  if (cfg.dimension() != 2) throw InvalidInput("contours require N = 2");
  Contour2D out;
  out.level = c;
  const Vec blo = cfg.bbox_min(), bhi = cfg.bbox_max();
  Eigen::Vector2d center = 0.5 * (blo + bhi);
  Eigen::Vector2d half = (0.5 * (bhi - blo)).cwiseMax(0.5 * cfg.scale());
  auto f2 = [&](double x, double y) {
    double F = 1.0;
    for (const auto& w : cfg.points()) F *= (x - w(0)) * (x - w(0)) + (y - w(1)) * (y - w(1));
    return F > 0 ? std::log(F) : kClamp;
  };
  const int n = resolution + 1;
  Eigen::Vector2d lo, h;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 60) throw NumericalFailure("contour reaches the sampling box boundary");
    lo = center - half;
    h = 2.0 * half / resolution;
    lo += kGridOffset * h;
    bool ok = true;
    for (int i = 0; i <= resolution && ok; ++i) {
      ok = ok && f2(lo(0) + i * h(0), lo(1)) > c && f2(lo(0) + i * h(0), lo(1) + resolution * h(1)) > c &&
           f2(lo(0), lo(1) + i * h(1)) > c && f2(lo(0) + resolution * h(0), lo(1) + i * h(1)) > c;
    }
    if (ok) break;
    half *= 1.5;
  }
  out.lo = lo;
  out.hi = lo + resolution * h;
  std::vector<double> vals(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i + n * j)] = f2(lo(0) + i * h(0), lo(1) + j * h(1));
  auto pos = [&](long id) { return Eigen::Vector2d(lo(0) + (id % n) * h(0), lo(1) + (id / n) * h(1)); };

  std::map<long, Eigen::Vector2d> points;             // edge key -> point
  std::map<long, std::vector<long>> adjacency;        // edge key -> neighbor keys
  auto key = [&](long a, long b) { return std::min(a, b) * (static_cast<long>(n) * n) + std::max(a, b); };
  auto edge_point = [&](long a, long b) {
    const long k = key(a, b);
    if (!points.count(k)) {
      const double fa = vals[static_cast<std::size_t>(a)], fb = vals[static_cast<std::size_t>(b)];
      const double t = (c - fa) / (fb - fa);
      points[k] = pos(a) + t * (pos(b) - pos(a));
    }
    return k;
  };
  for (int j = 0; j < resolution; ++j)
    for (int i = 0; i < resolution; ++i) {
      const long v00 = i + n * j, v10 = v00 + 1, v01 = v00 + n, v11 = v01 + 1;
      for (const auto& tri : {std::array<long, 3>{v00, v10, v11}, std::array<long, 3>{v00, v11, v01}}) {
        std::vector<long> in, outv;
        for (long v : tri) (vals[static_cast<std::size_t>(v)] < c ? in : outv).push_back(v);
        if (in.empty() || outv.empty()) continue;
        long a, b;
        if (in.size() == 1) {
          a = edge_point(in[0], outv[0]);
          b = edge_point(in[0], outv[1]);
        } else {
          a = edge_point(in[0], outv[0]);
          b = edge_point(in[1], outv[0]);
        }
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
      }
    }
  std::map<long, bool> used;
  for (const auto& [start, nb] : adjacency) {
    if (used[start]) continue;
    std::vector<Eigen::Vector2d> line{points[start]};
    used[start] = true;
    long prev = -1, cur = start;
    bool closed = false;
    while (true) {
      long next = -1;
      for (long cand : adjacency[cur]) {
        if (cand == prev) continue;
        if (cand == start && line.size() > 2) {
          closed = true;
          break;
        }
        if (!used[cand]) {
          next = cand;
          break;
        }
      }
      if (closed || next < 0) break;
      used[next] = true;
      line.push_back(points[next]);
      prev = cur;
      cur = next;
    }
    if (closed) {
      line.push_back(line.front());
      ++out.closed_loops;
    }
    out.polylines.push_back(std::move(line));
  }
  return out;
}

}  // namespace lemniscate
