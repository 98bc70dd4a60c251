#pragma once

#include <vector>

#include "conedesc/types.hpp"

namespace conedesc {

/// Finite set of dual vectors. The convex compact set it stands for is the
/// convex hull of the stored points; the induced cone is
/// K = { x : <c,x> >= 0 for every stored c }.
///
/// Duplicate points (within 1e-12 Euclidean distance) are removed at
/// construction, keeping the first occurrence. Immutable afterwards.
class GeneratorSet {
 public:
  explicit GeneratorSet(std::vector<Vec> points);

  int dim() const { return static_cast<int>(points_.front().size()); }
  int size() const { return static_cast<int>(points_.size()); }
  const Vec& point(int i) const { return points_[static_cast<size_t>(i)]; }
  const std::vector<Vec>& points() const { return points_; }

  double max_norm() const { return max_norm_; }

  /// Diagnostic for the standing pointedness hypothesis on K: if the
  /// generators span the whole value space, K is pointed. Rank of the
  /// generator matrix at the given tolerance.
  bool spans_value_space(double tol = 1e-10) const;

 private:
  std::vector<Vec> points_;
  double max_norm_ = 0.0;
};

/// Canonical basis {e_1, ..., e_m}; the generating set of the positive
/// orthant's polar. m = 1 gives {1}.
GeneratorSet orthant_generators(int m);

}  // namespace conedesc
