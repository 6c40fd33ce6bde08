#pragma once

#include <string>
#include <vector>

#include "lemniscate/level_set.hpp"
#include "lemniscate/solver.hpp"

namespace lemniscate {

struct MergeLeaf {
  int critical_index = -1;  // into CriticalSet::points
  bool pole = false;
  double value = 0;
  Vec location;
};

struct MergeEvent {
  int critical_index = -1;
  double value = 0;
  Vec location;
  int left = -1;   // node ids: leaves are 0..L-1, merges L, L+1, ...
  int right = -1;
};

/// Sublevel-set merge tree (a computable proxy for the topological type).
struct MergeTree {
  std::vector<MergeLeaf> leaves;
  std::vector<MergeEvent> merges;  // increasing value
  int root = -1;
  std::vector<std::string> anomalies;
  double value_tolerance = 0;  // values closer than this share a rank

  /// Components of {f < c}: leaves below c minus merges below c.
  int cut_count(double c) const;
  double node_value(int node) const;
};

/// Needs a local Morse critical set (PreconditionFailed otherwise). Saddles
/// are processed in increasing value; each joins the components reached by
/// steepest descent along +-(negative eigenvector). Equal values are allowed.
MergeTree merge_tree(const PointConfiguration& cfg, const CriticalSet& set);

/// Nested-parenthesis encoding: leaves "P" (pole) or "m<rank>", merges
/// "s<rank>(A,B,...)", ranks over distinct non-pole critical values. Merges of
/// equal rank that feed each other are written as one node; children are
/// ordered by minimal leaf value and then by string. Forest roots join with '|'.
std::string topological_type(const MergeTree& tree);

struct BettiRow {
  double level = 0;
  int components = 0;
  std::vector<int> euler;         // per component
  std::vector<bool> watertight;   // per component
  int expected_components = 0;    // merge-tree cut count
  bool consistent = false;
};

std::vector<BettiRow> betti_trace(const PointConfiguration& cfg, const MergeTree& tree,
                                  const std::vector<double>& levels, int resolution = 128);

/// Up to `count` regular levels whose small features (pole spheres, minimum
/// spheres, saddle necks and gaps) span at least three grid cells, taken at
/// interior fractions of the gaps between critical values.
std::vector<double> sample_regular_levels(const PointConfiguration& cfg, const CriticalSet& set, int count,
                                          int resolution = 128);

}  // namespace lemniscate
