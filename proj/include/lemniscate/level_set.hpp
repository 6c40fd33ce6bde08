#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <vector>

#include "lemniscate/potential.hpp"

namespace lemniscate {

struct Box3 {
  Eigen::Vector3d lo;
  Eigen::Vector3d hi;
};

struct LevelSetMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> component_labels;  // per triangle, 0..component_count-1
  int component_count = 0;
  double level = 0;
  int resolution = 0;
  Box3 box;
};

/// Sampling box for level c: the bounding box of the points inflated by
/// 1 + exp((c - f_max)/(2r)), grown until f > c on every boundary grid vertex.
/// Throws NumericalFailure if it cannot be made large enough.
Box3 level_set_box(const PointConfiguration& cfg, double c, int resolution);

/// Marching tetrahedra (six Kuhn tetrahedra per grid cube) on f - c over a
/// resolution^3 grid. Grid values equal to c count as above the level. N must be 3.
LevelSetMesh extract_level_set(const PointConfiguration& cfg, double c, int resolution = 128);

struct ComponentTopology {
  int component = 0;
  long vertices = 0;
  long edges = 0;
  long faces = 0;
  bool watertight = false;  // every edge shared by exactly two triangles
  int euler = 0;            // V - E + F, meaningful only when watertight
};

std::vector<ComponentTopology> euler_characteristic(const LevelSetMesh& mesh);

/// Union-find labeling of triangles by shared vertices; fills component_labels.
void label_components(LevelSetMesh& mesh);

/// One OBJ object per component.
void write_obj(const LevelSetMesh& mesh, std::ostream& os);

struct Contour2D {
  double level = 0;
  std::vector<std::vector<Eigen::Vector2d>> polylines;  // closed loops repeat their first vertex
  int closed_loops = 0;
  Eigen::Vector2d lo, hi;
};

/// Marching squares (each square split into two triangles) for N = 2.
Contour2D extract_contour(const PointConfiguration& cfg, double c, int resolution = 256);

}  // namespace lemniscate
