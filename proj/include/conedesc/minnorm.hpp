#pragma once

#include <vector>

#include "conedesc/types.hpp"

namespace conedesc {

inline constexpr double kDefaultGapTol = 1e-10;

/// Convex-combination coefficients over an input point list.
struct SimplexWeights {
  std::vector<double> lambda;
};

struct MinNormResult {
  Vec point;              // the projection of the origin onto the hull
  SimplexWeights weights; // hull-membership certificate, one entry per input
  double sq_norm = 0.0;
  int iterations = 0;
  bool converged = false; // Wolfe criterion met: min_i <g,g_i> >= |g|^2 - gap
};

/// Minimum-norm point of conv(points) by Wolfe's active-set method.
/// Falls back to away-step Frank-Wolfe when the active-set solves stay
/// singular. Iteration cap 10*p*dim + 1000; on cap, returns the best
/// iterate with converged = false.
MinNormResult min_norm_point(const std::vector<Vec>& points,
                             double gap_tol = kDefaultGapTol);

/// Euclidean distance from q to conv(points).
double dist_to_hull(const Vec& q, const std::vector<Vec>& points,
                    double gap_tol = kDefaultGapTol);

namespace detail {
/// Away-step Frank-Wolfe for the same problem; the fallback path of
/// min_norm_point, exposed for direct testing.
MinNormResult away_step_frank_wolfe(const std::vector<Vec>& points,
                                    double gap_tol, int max_iter);
}  // namespace detail

}  // namespace conedesc
