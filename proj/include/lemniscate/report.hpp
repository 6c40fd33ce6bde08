#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lemniscate/bifurcation.hpp"
#include "lemniscate/complex_structure.hpp"
#include "lemniscate/constructions.hpp"
#include "lemniscate/level_set.hpp"
#include "lemniscate/merge_tree.hpp"
#include "lemniscate/solver.hpp"

namespace lemniscate {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Serializes with every double printed as %.17g; non-finite numbers become null.
std::string dump_json(const json& j, int indent = 2);

/// {"dimension": N, "points": [[...], ...]}
PointConfiguration configuration_from_json(const json& j);
json configuration_to_json(const PointConfiguration& cfg);
PointConfiguration read_configuration(const std::filesystem::path& path);

json to_json(const Vec& v);
json to_json(const SolverOptions& o);
json to_json(const CriticalSet& set);
json to_json(const ReferenceData& ref);
json to_json(const Construction& c);  // configuration plus "family", "parameters", "reference"
json to_json(const MergeTree& tree);
json to_json(const HessianDecomposition& d);

void write_critical_csv(const CriticalSet& set, std::ostream& os);
void write_sweep_csv(const SweepResult& sweep, std::ostream& os);
void write_betti_csv(const std::vector<BettiRow>& rows, std::ostream& os);

struct RunManifest {
  std::string command;
  std::string input;  // path or family descriptor
  json options = json::object();
  std::vector<std::string> outputs;
  std::uint64_t rng_seed = 0;
  std::string version = kVersion;

  json to_json() const;
  /// Writes manifest.json into dir.
  void write(const std::filesystem::path& dir) const;
};

/// %.17g
std::string format_double(double x);

}  // namespace lemniscate
