#pragma once

#include <string>
#include <vector>

#include "conedesc/generator_set.hpp"

namespace conedesc {

/// Axis-aligned parameter region A in R^d.
struct Box {
  Vec lo;
  Vec hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& a, double tol = 0.0) const;
  /// Largest edge length; the reference scale for sequence radii.
  double scale() const;
};

enum class FiberKind {
  constant,
  rotation,
  jump,
  pinch,
  expand,
  interpolation,
  table,
};

FiberKind fiber_kind_from_string(const std::string& s);
std::string to_string(FiberKind k);

/// Parametric map a -> generator set on a domain box, with a uniform norm
/// bound shared by all fibers. The non-constant kinds are one-parameter
/// families (d = 1):
///   rotation       R(rate*a) applied to the base generators (value dim 2)
///   jump           base for a <= breakpoint, base2 beyond
///   pinch          base plus extra generators exactly at the breakpoint
///   expand         base at the breakpoint, base plus extra elsewhere
///   interpolation  pointwise blend base -> base2 across the domain
///   table          nearest-node lookup in a list of sets (ties go low)
class FiberFamily {
 public:
  static FiberFamily constant(GeneratorSet base, Box domain, double bound);
  static FiberFamily rotation(GeneratorSet base, double rate, Box domain,
                              double bound);
  static FiberFamily jump(GeneratorSet base, GeneratorSet base2,
                          double breakpoint, Box domain, double bound);
  static FiberFamily pinch(GeneratorSet base, std::vector<Vec> extra,
                           double breakpoint, Box domain, double bound);
  static FiberFamily expand(GeneratorSet base, std::vector<Vec> extra,
                            double breakpoint, Box domain, double bound);
  static FiberFamily interpolation(GeneratorSet base, GeneratorSet base2,
                                   Box domain, double bound);
  static FiberFamily table(std::vector<double> nodes,
                           std::vector<GeneratorSet> sets, Box domain,
                           double bound);

  /// Evaluate the fiber at a. Throws std::domain_error outside the box.
  GeneratorSet fiber(const Vec& a) const;

  FiberKind kind() const { return kind_; }
  int value_dim() const;
  const Box& domain() const { return domain_; }
  double bound() const { return bound_; }

  // Kind parameters, exposed for serialization.
  const GeneratorSet& base() const { return sets_[0]; }
  const GeneratorSet& base2() const { return sets_[1]; }
  const std::vector<GeneratorSet>& sets() const { return sets_; }
  const std::vector<Vec>& extra() const { return extra_; }
  double rate() const { return rate_; }
  double breakpoint() const { return breakpoint_; }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  FiberFamily(FiberKind kind, Box domain, double bound);
  void validate_fibers() const;

  FiberKind kind_;
  Box domain_;
  double bound_ = 0.0;
  std::vector<GeneratorSet> sets_;  // base [, base2] or table entries
  std::vector<Vec> extra_;          // pinch/expand additions
  double rate_ = 0.0;
  double breakpoint_ = 0.0;
  std::vector<double> nodes_;
};

struct FiberConditionReport {
  bool pass = false;
  double max_generator_norm = 0.0;
  std::vector<std::string> violations;  // one message per offending point
};

/// Checks nonemptiness, the declared uniform bound, and the span diagnostic
/// over a sample grid of the domain.
FiberConditionReport check_fiber_conditions(const FiberFamily& family,
                                            const std::vector<Vec>& grid);

/// Uniform grid over the box, points_per_axis per coordinate.
std::vector<Vec> domain_grid(const Box& domain, int points_per_axis);

}  // namespace conedesc
