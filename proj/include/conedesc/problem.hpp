#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "conedesc/descent.hpp"
#include "conedesc/envelope.hpp"
#include "conedesc/fiber_family.hpp"
#include "conedesc/objective.hpp"

namespace conedesc {

struct SpaceDims {
  int n = 0;  // decision space
  int m = 0;  // value space
  int d = 0;  // cone parameter space
  int q = 0;  // objective parameter space (0 allowed)
};

struct SequenceDefaults {
  int count = 8;
  int length = 24;
  double gamma = 0.5;
  double r0 = 0.0;  // 0 = domain scale / 8
};

struct AnalysisParams {
  double tol_crit = 1e-8;
  double tol_haus = 0.0;  // 0 = 1e-6 * bound
  double tol_env = 0.0;   // 0 = 1e-6 * bound
  double gap_tol = kDefaultGapTol;
  SequenceDefaults seq;
  std::vector<Vec> probes;  // empty = defaults for m
  std::uint64_t seed = 42;
  Vec a0;      // evaluation point in A
  Vec alpha0;  // start point in R^n
  Vec s0;      // objective parameter (size q)
  std::vector<double> radii;  // continuity probe radii, decreasing
  LineSearchParams line_search;
  int max_iterations = 200;
  int scan_points = 201;          // gauge-scan grid
  int grid_points_per_axis = 33;  // fiber-condition grid
};

struct ProblemSpec {
  SpaceDims space;
  FiberFamily cone_family;
  ObjectiveFamily objective;
  AnalysisParams analysis;
};

enum class LoadErrorCode { parse_error = 1, schema_violation = 2, dimension_mismatch = 3 };

class LoadError : public std::runtime_error {
 public:
  LoadError(LoadErrorCode code, std::vector<std::string> violations);
  LoadErrorCode code() const { return code_; }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  LoadErrorCode code_;
  std::vector<std::string> violations_;
};

/// Load and validate a problem file. Throws LoadError with one JSON-path
/// prefixed message per violation.
ProblemSpec load_problem(const std::string& path);

/// Same, from in-memory text.
ProblemSpec parse_problem(const std::string& text);

/// Canonical JSON form; parse(serialize(spec)) is semantically identical.
std::string serialize_problem(const ProblemSpec& spec);

struct CatalogEntry {
  std::string name;
  std::string description;
  ProblemSpec spec;
};

/// Bundled fixtures; the regular/irregular cases of the theory each have a
/// representative.
const std::vector<CatalogEntry>& catalog();

}  // namespace conedesc
