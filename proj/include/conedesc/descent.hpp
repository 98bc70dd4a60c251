#pragma once

#include <vector>

#include "conedesc/envelope.hpp"
#include "conedesc/objective.hpp"

namespace conedesc {

inline constexpr double kDefaultCritTol = 1e-8;

struct LineSearchParams {
  double sigma = 0.1;  // sufficient-decrease fraction, in (0,1)
  double beta = 0.5;   // backtracking ratio, in (0,1)
  double t0 = 1.0;     // initial step
  int max_backtracks = 60;
};

struct DescentResult {
  Vec nu;                 // steepest-descent direction
  double m_value = 0.0;   // optimal value, -0.5 |nu|^2
  SimplexWeights weights; // dual simplex weights over the fiber generators
  bool critical = false;  // |nu| <= crit_tol
  MinNormResult subproblem;
};

/// Gauge of the pushed-forward direction, G(a, DF_s(alpha) nu). Negative
/// values certify descent directions.
double direction_gauge(const FiberFamily& family, const Vec& a,
                       const ObjectiveFamily& obj, const Vec& s,
                       const Vec& alpha, const Vec& nu);

/// Steepest-descent direction via the min-norm dual: project the origin
/// onto conv{ DF' c_i }, negate. m = -0.5 |nu|^2.
DescentResult steepest_descent_direction(const FiberFamily& family,
                                         const Vec& a,
                                         const ObjectiveFamily& obj,
                                         const Vec& s, const Vec& alpha,
                                         double gap_tol = kDefaultGapTol,
                                         double crit_tol = kDefaultCritTol);

bool is_critical(const FiberFamily& family, const Vec& a,
                 const ObjectiveFamily& obj, const Vec& s, const Vec& alpha,
                 double crit_tol = kDefaultCritTol,
                 double gap_tol = kDefaultGapTol);

struct ArmijoResult {
  double t = 0.0;
  bool accepted = false;
  int backtracks = 0;
};

/// Largest t in {t0 beta^k} whose decrease dominates sigma*t times the
/// linearization in every generator direction:
/// G(a, F(alpha + t nu) - F(alpha) - sigma t DF nu) <= 0.
/// Requires a descent direction (direction_gauge < 0).
ArmijoResult armijo_step(const FiberFamily& family, const Vec& a,
                         const ObjectiveFamily& obj, const Vec& s,
                         const Vec& alpha, const Vec& nu,
                         const LineSearchParams& params);

enum class DescentStatus { critical, max_iterations, line_search_failed, subproblem_failed };
std::string to_string(DescentStatus s);

struct IterationRecord {
  Vec alpha;
  Vec nu;
  double m_value = 0.0;
  double step = 0.0;           // step taken from alpha; 0 on the final row
  bool strict_decrease = false;  // F(next) strictly below F(alpha) in the order
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  DescentStatus status = DescentStatus::max_iterations;
  int iterations = 0;  // accepted steps
  Vec final_alpha;
};

/// Iterate direction + Armijo step until criticality or max_iter.
IterationTrace run_descent(const FiberFamily& family, const Vec& a,
                           const ObjectiveFamily& obj, const Vec& s,
                           const Vec& alpha0, const LineSearchParams& params,
                           double crit_tol = kDefaultCritTol,
                           int max_iter = 200,
                           double gap_tol = kDefaultGapTol);

struct ContinuityRow {
  double radius = 0.0;
  double max_dnu = 0.0;
  double max_dm = 0.0;
  int skipped = 0;  // parameter perturbations that left the domain
};

/// Empirical modulus of (a, s, alpha) -> (nu, m): for each radius, the max
/// change under signed coordinate perturbations of a, s and alpha.
std::vector<ContinuityRow> continuity_probe(const FiberFamily& family,
                                            const Vec& a,
                                            const ObjectiveFamily& obj,
                                            const Vec& s, const Vec& alpha,
                                            const std::vector<double>& radii,
                                            double gap_tol = kDefaultGapTol);

}  // namespace conedesc
