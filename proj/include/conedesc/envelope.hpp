#pragma once

#include <string>
#include <vector>

#include "conedesc/fiber_family.hpp"
#include "conedesc/minnorm.hpp"

namespace conedesc {

/// Geometric approach sequence a_j = a + r0 * gamma^j * direction,
/// j = 0 .. length-1. Sequences that leave the domain box are rejected by
/// the analyses, never clipped.
struct SequenceSpec {
  Vec direction;  // unit vector
  double r0 = 0.0;
  double gamma = 0.5;
  int length = 24;
};

std::vector<Vec> sequence_points(const SequenceSpec& spec, const Vec& a);
bool sequence_in_domain(const SequenceSpec& spec, const Vec& a,
                        const Box& domain);

/// Default bundle: `count` directions (signed axes, then diagonals),
/// r0 = domain scale / 8 when not given.
std::vector<SequenceSpec> default_sequence_specs(const Box& domain,
                                                 int count = 8,
                                                 int length = 24,
                                                 double gamma = 0.5,
                                                 double r0 = 0.0);

/// Default probe directions in R^m: signed canonical basis, then signed
/// normalized diagonals until `count` is reached.
std::vector<Vec> default_probe_directions(int m, int count = 8);

/// min over the fiber's generators of <c,x>.
double lower_envelope(const FiberFamily& family, const Vec& x, const Vec& a);

/// max over the fiber's generators of <c,x>; equals gauge(fiber(a), x).
double variational_gauge(const FiberFamily& family, const Vec& a,
                         const Vec& x);

struct EnvelopeLimitBounds {
  double liminf_est = 0.0;
  double limsup_est = 0.0;
};

/// Sampled bounds on the lower/upper limits of a -> envelope along the
/// given sequences. Tail = last ceil(N/2) points of each sequence; the
/// value at a itself (the constant sequence) enters both candidate pools.
/// Requires >= 4 specs; specs leaving the domain are dropped; throws if
/// none remain.
EnvelopeLimitBounds envelope_limit_bounds(const FiberFamily& family,
                                          const Vec& x, const Vec& a,
                                          const std::vector<SequenceSpec>& specs);

/// One-sided Hausdorff deficit of lower semicontinuity along one sequence:
/// max over generators v of fiber(a) of the tail max of
/// dist(v, conv fiber(a_j)). Zero means no element of the fiber at a is
/// lost along this approach.
double lsc_deficit(const FiberFamily& family, const Vec& a,
                   const SequenceSpec& spec, double gap_tol = kDefaultGapTol);

/// Dual deficit: max over tail j and generators w of fiber(a_j) of
/// dist(w, conv fiber(a)). Zero means nearby fibers do not escape.
double usc_deficit(const FiberFamily& family, const Vec& a,
                   const SequenceSpec& spec, double gap_tol = kDefaultGapTol);

/// Sampled limit fiber along one sequence: candidate points (vertices of
/// the fiber at a and of the tail fibers) with their tail residuals.
/// full = true keeps candidates approached by the whole tail (limits);
/// full = false keeps candidates approached infinitely often (clusters).
struct LimitFiberEstimate {
  std::vector<Vec> cloud;
  std::vector<double> residuals;
};
LimitFiberEstimate limit_fiber(const FiberFamily& family, const Vec& a,
                               const SequenceSpec& spec, bool full,
                               double accept_tol,
                               double gap_tol = kDefaultGapTol);

struct RegularityTolerances {
  double eps_hausdorff = 0.0;  // deficit scale
  double eps_envelope = 0.0;   // envelope gap scale, per unit probe norm
  double gap_tol = kDefaultGapTol;
};

/// 1e-6 * family bound, per the analysis defaults.
RegularityTolerances default_regularity_tolerances(const FiberFamily& family);

enum class RegularityVerdict { regular, irregular, inconclusive };
std::string to_string(RegularityVerdict v);

struct SequenceDiagnostic {
  int spec_index = 0;
  Vec direction;
  double lsc_deficit = 0.0;
  double usc_deficit = 0.0;
};

struct ProbeDiagnostic {
  Vec x;
  double liminf_est = 0.0;
  double value = 0.0;  // envelope at a itself
  double limsup_est = 0.0;
};

struct RegularityReport {
  double lsc_deficit = 0.0;       // max over sequences
  double usc_deficit = 0.0;       // max over sequences
  double envelope_lsc_gap = 0.0;  // max over probes of value - liminf
  double envelope_usc_gap = 0.0;  // max over probes of limsup - value
  std::vector<SequenceDiagnostic> sequences;
  std::vector<ProbeDiagnostic> probes;
  RegularityVerdict verdict = RegularityVerdict::inconclusive;
  // Verdicts recomputed from sampled limit clouds: full-sequence limits,
  // cluster points, and convex hulls of cluster points.
  bool c_cloud_regular = false;
  bool c1_cloud_regular = false;
  bool c2_cloud_regular = false;
  std::string resolution_note;
};

/// Full semicontinuity / c-regularity analysis at a. Requires >= 4 specs
/// and >= 8 probe directions containing the signed canonical basis.
/// "regular" needs every deficit <= eps_h and every probe gap <= eps_e;
/// "irregular" needs some deficit > 10*eps_h or gap > 10*eps_e; anything
/// between is inconclusive.
RegularityReport analyze_regularity(const FiberFamily& family, const Vec& a,
                                    const std::vector<SequenceSpec>& specs,
                                    const std::vector<Vec>& probes,
                                    const RegularityTolerances& tols);

}  // namespace conedesc
