#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lemniscate/constructions.hpp"
#include "lemniscate/solver.hpp"

namespace lemniscate {

enum class CheckOutcome { pass, fail, input_error, numerical_error };

struct CheckResult {
  std::string suite;
  std::string name;
  CheckOutcome outcome = CheckOutcome::pass;
  std::string message;
  double seconds = 0;
  bool passed() const { return outcome == CheckOutcome::pass; }
};

struct VerifyOptions {
  std::string suite = "all";  // all | core | topology | construction
  int resolution = 64;
  int levels = 4;
  SolverOptions solver;
  /// Replaces the built-in families with one user configuration (core and
  /// topology checks only).
  std::optional<std::string> points_path;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opts);

/// 0 if everything passed, 2 if any mathematical check failed, 1 otherwise.
int verify_exit_code(const std::vector<CheckResult>& results);

void write_junit(const std::vector<CheckResult>& results, std::ostream& os);

/// Largest distance from a reference point to the closest critical point of
/// the given kinds; infinity if none exist.
double reference_distance(const CriticalSet& set, const std::vector<Vec>& ref,
                          const std::vector<CriticalKind>& kinds);

}  // namespace lemniscate
