#include "conedesc/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conedesc/cone.hpp"
#include "conedesc/log.hpp"

namespace conedesc {

namespace {

void validate_spec(const SequenceSpec& spec) {
  if (spec.direction.size() == 0 || !all_finite(spec.direction))
    throw std::invalid_argument("sequence direction must be finite and nonempty");
  if (std::abs(spec.direction.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("sequence direction must be a unit vector");
  if (!(spec.r0 > 0.0)) throw std::invalid_argument("sequence r0 must be positive");
  if (!(spec.gamma > 0.0 && spec.gamma < 1.0))
    throw std::invalid_argument("sequence ratio must lie in (0,1)");
  if (spec.length < 8) throw std::invalid_argument("sequence length must be >= 8");
}

int tail_start(int length) { return length - (length + 1) / 2; }

std::vector<Vec> dedup_cloud(const std::vector<Vec>& pts, double tol) {
  std::vector<Vec> out;
  for (const Vec& p : pts) {
    bool seen = false;
    for (const Vec& q : out) {
      if ((p - q).norm() <= tol) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(p);
  }
  return out;
}

double cloud_hausdorff(const std::vector<Vec>& p, const std::vector<Vec>& q) {
  if (p.empty() || q.empty()) return std::numeric_limits<double>::infinity();
  auto one_sided = [](const std::vector<Vec>& a, const std::vector<Vec>& b) {
    double worst = 0.0;
    for (const Vec& x : a) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& y : b) best = std::min(best, (x - y).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(p, q), one_sided(q, p));
}

double hull_hausdorff(const std::vector<Vec>& p, const std::vector<Vec>& q, double gap_tol) {
  if (p.empty() || q.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Vec& x : p) worst = std::max(worst, dist_to_hull(x, q, gap_tol));
  for (const Vec& y : q) worst = std::max(worst, dist_to_hull(y, p, gap_tol));
  return worst;
}

}  // namespace

std::vector<Vec> sequence_points(const SequenceSpec& spec, const Vec& a) {
  validate_spec(spec);
  if (a.size() != spec.direction.size())
    throw std::invalid_argument("sequence base point dimension mismatch");
  std::vector<Vec> pts;
  pts.reserve(static_cast<size_t>(spec.length));
  double r = spec.r0;
  for (int j = 0; j < spec.length; ++j) {
    pts.push_back(a + r * spec.direction);
    r *= spec.gamma;
  }
  return pts;
}

bool sequence_in_domain(const SequenceSpec& spec, const Vec& a, const Box& domain) {
  for (const Vec& p : sequence_points(spec, a))
    if (!domain.contains(p, 0.0)) return false;
  return true;
}

std::vector<SequenceSpec> default_sequence_specs(const Box& domain, int count, int length,
                                                 double gamma, double r0) {
  if (count < 4) throw std::invalid_argument("need at least 4 sequence specs");
  const int d = domain.dim();
  if (r0 <= 0.0) r0 = domain.scale() / 8.0;

  std::vector<Vec> dirs;
  for (int i = 0; i < d; ++i) {
    dirs.push_back(Vec::Unit(d, i));
    dirs.push_back(-Vec::Unit(d, i));
  }
  for (int i = 0; i < d && static_cast<int>(dirs.size()) < count; ++i) {
    for (int j = i + 1; j < d && static_cast<int>(dirs.size()) < count; ++j) {
      Vec v = (Vec::Unit(d, i) + Vec::Unit(d, j)).normalized();
      dirs.push_back(v);
      dirs.push_back(-v);
    }
  }

  std::vector<SequenceSpec> specs;
  double radius = r0;
  size_t k = 0;
  while (static_cast<int>(specs.size()) < count) {
    SequenceSpec s;
    s.direction = dirs[k % dirs.size()];
    s.r0 = radius;
    s.gamma = gamma;
    s.length = length;
    specs.push_back(std::move(s));
    ++k;
    if (k % dirs.size() == 0) radius *= 0.7;  // diversify radii past one sweep
  }
  return specs;
}

std::vector<Vec> default_probe_directions(int m, int count) {
  if (m < 1) throw std::invalid_argument("probe dimension must be >= 1");
  if (count < 8) count = 8;
  std::vector<Vec> probes;
  for (int i = 0; i < m; ++i) {
    probes.push_back(Vec::Unit(m, i));
    probes.push_back(-Vec::Unit(m, i));
  }
  if (m == 1) {
    for (double scale : {0.5, 2.0, 4.0}) {
      probes.push_back(scale * Vec::Unit(1, 0));
      probes.push_back(-scale * Vec::Unit(1, 0));
    }
  }
  for (int i = 0; i < m && static_cast<int>(probes.size()) < count; ++i) {
    for (int j = i + 1; j < m && static_cast<int>(probes.size()) < count; ++j) {
      Vec v = (Vec::Unit(m, i) + Vec::Unit(m, j)).normalized();
      probes.push_back(v);
      probes.push_back(-v);
      Vec w = (Vec::Unit(m, i) - Vec::Unit(m, j)).normalized();
      probes.push_back(w);
      probes.push_back(-w);
    }
  }
  while (static_cast<int>(probes.size()) < count) {
    Vec v = Vec::Ones(m).normalized();
    probes.push_back(v);
    probes.push_back(-v);
  }
  return probes;
}

double lower_envelope(const FiberFamily& family, const Vec& x, const Vec& a) {
  const GeneratorSet fib = family.fiber(a);
  if (x.size() != fib.dim())
    throw std::invalid_argument("envelope probe dimension mismatch");
  double best = fib.point(0).dot(x);
  for (int i = 1; i < fib.size(); ++i) best = std::min(best, fib.point(i).dot(x));
  return best;
}

double variational_gauge(const FiberFamily& family, const Vec& a, const Vec& x) {
  return gauge(family.fiber(a), x);
}

EnvelopeLimitBounds envelope_limit_bounds(const FiberFamily& family, const Vec& x,
                                          const Vec& a,
                                          const std::vector<SequenceSpec>& specs) {
  if (specs.size() < 4)
    throw std::invalid_argument("envelope_limit_bounds: need >= 4 sequence specs");
  const double at_a = lower_envelope(family, x, a);
  EnvelopeLimitBounds bounds{at_a, at_a};
  int used = 0;
  for (const SequenceSpec& spec : specs) {
    if (!sequence_in_domain(spec, a, family.domain())) continue;
    ++used;
    const std::vector<Vec> pts = sequence_points(spec, a);
    const int start = tail_start(spec.length);
    for (int j = start; j < spec.length; ++j) {
      const double v = lower_envelope(family, x, pts[static_cast<size_t>(j)]);
      bounds.liminf_est = std::min(bounds.liminf_est, v);
      bounds.limsup_est = std::max(bounds.limsup_est, v);
    }
  }
  if (used == 0)
    throw std::domain_error("envelope_limit_bounds: no valid sequences in domain");
  return bounds;
}

double lsc_deficit(const FiberFamily& family, const Vec& a, const SequenceSpec& spec,
                   double gap_tol) {
  if (!sequence_in_domain(spec, a, family.domain()))
    throw std::domain_error("lsc_deficit: sequence leaves the domain");
  const GeneratorSet at_a = family.fiber(a);
  const std::vector<Vec> pts = sequence_points(spec, a);
  const int start = tail_start(spec.length);
  double deficit = 0.0;
  for (int j = start; j < spec.length; ++j) {
    const GeneratorSet fib = family.fiber(pts[static_cast<size_t>(j)]);
    for (const Vec& v : at_a.points())
      deficit = std::max(deficit, dist_to_hull(v, fib.points(), gap_tol));
  }
  return deficit;
}

double usc_deficit(const FiberFamily& family, const Vec& a, const SequenceSpec& spec,
                   double gap_tol) {
  if (!sequence_in_domain(spec, a, family.domain()))
    throw std::domain_error("usc_deficit: sequence leaves the domain");
  const GeneratorSet at_a = family.fiber(a);
  const std::vector<Vec> pts = sequence_points(spec, a);
  const int start = tail_start(spec.length);
  double deficit = 0.0;
  for (int j = start; j < spec.length; ++j) {
    const GeneratorSet fib = family.fiber(pts[static_cast<size_t>(j)]);
    for (const Vec& w : fib.points())
      deficit = std::max(deficit, dist_to_hull(w, at_a.points(), gap_tol));
  }
  return deficit;
}

LimitFiberEstimate limit_fiber(const FiberFamily& family, const Vec& a,
                               const SequenceSpec& spec, bool full, double accept_tol,
                               double gap_tol) {
  if (!sequence_in_domain(spec, a, family.domain()))
    throw std::domain_error("limit_fiber: sequence leaves the domain");
  const std::vector<Vec> pts = sequence_points(spec, a);
  const int start = tail_start(spec.length);

  std::vector<Vec> candidates = family.fiber(a).points();
  std::vector<std::vector<Vec>> tail_fibers;
  for (int j = start; j < spec.length; ++j) {
    tail_fibers.push_back(family.fiber(pts[static_cast<size_t>(j)]).points());
    for (const Vec& w : tail_fibers.back()) candidates.push_back(w);
  }
  candidates = dedup_cloud(candidates, 1e-9);

  LimitFiberEstimate est;
  for (const Vec& cand : candidates) {
    double residual = full ? 0.0 : std::numeric_limits<double>::infinity();
    for (const std::vector<Vec>& fib : tail_fibers) {
      const double d = dist_to_hull(cand, fib, gap_tol);
      residual = full ? std::max(residual, d) : std::min(residual, d);
    }
    if (residual <= accept_tol) {
      est.cloud.push_back(cand);
      est.residuals.push_back(residual);
    }
  }
  return est;
}

RegularityTolerances default_regularity_tolerances(const FiberFamily& family) {
  RegularityTolerances tols;
  tols.eps_hausdorff = 1e-6 * family.bound();
  tols.eps_envelope = 1e-6 * family.bound();
  tols.gap_tol = kDefaultGapTol;
  return tols;
}

std::string to_string(RegularityVerdict v) {
  switch (v) {
    case RegularityVerdict::regular: return "regular";
    case RegularityVerdict::irregular: return "irregular";
    case RegularityVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

RegularityReport analyze_regularity(const FiberFamily& family, const Vec& a,
                                    const std::vector<SequenceSpec>& specs,
                                    const std::vector<Vec>& probes,
                                    const RegularityTolerances& tols) {
  if (specs.size() < 4)
    throw std::invalid_argument("analyze_regularity: need >= 4 sequence specs");
  if (probes.size() < 8)
    throw std::invalid_argument("analyze_regularity: need >= 8 probe directions");
  const int m = family.value_dim();
  for (const Vec& p : probes) {
    if (p.size() != m || !all_finite(p) || p.norm() == 0.0)
      throw std::invalid_argument("analyze_regularity: bad probe direction");
  }
  for (int i = 0; i < m; ++i) {
    for (double sign : {1.0, -1.0}) {
      const Vec e = sign * Vec::Unit(m, i);
      bool found = false;
      for (const Vec& p : probes)
        if ((p / p.norm() - e).norm() <= 1e-9) found = true;
      if (!found)
        throw std::invalid_argument(
            "analyze_regularity: probes must include the signed canonical basis");
    }
  }
  if (!(tols.eps_hausdorff > 0.0 && tols.eps_envelope > 0.0))
    throw std::invalid_argument("analyze_regularity: tolerances must be positive");

  std::vector<int> valid;
  for (size_t i = 0; i < specs.size(); ++i) {
    if (sequence_in_domain(specs[i], a, family.domain()))
      valid.push_back(static_cast<int>(i));
    else
      log_info("analyze_regularity: sequence spec " + std::to_string(i) +
               " leaves the domain, skipped");
  }
  if (valid.empty())
    throw std::domain_error("analyze_regularity: no valid sequences in domain");

  RegularityReport report;
  for (int idx : valid) {
    const SequenceSpec& spec = specs[static_cast<size_t>(idx)];
    SequenceDiagnostic diag;
    diag.spec_index = idx;
    diag.direction = spec.direction;
    diag.lsc_deficit = lsc_deficit(family, a, spec, tols.gap_tol);
    diag.usc_deficit = usc_deficit(family, a, spec, tols.gap_tol);
    report.lsc_deficit = std::max(report.lsc_deficit, diag.lsc_deficit);
    report.usc_deficit = std::max(report.usc_deficit, diag.usc_deficit);
    report.sequences.push_back(std::move(diag));
  }

  bool probes_regular = true;
  bool probes_irregular = false;
  for (const Vec& x : probes) {
    ProbeDiagnostic diag;
    diag.x = x;
    diag.value = lower_envelope(family, x, a);
    const EnvelopeLimitBounds bounds = envelope_limit_bounds(family, x, a, specs);
    diag.liminf_est = bounds.liminf_est;
    diag.limsup_est = bounds.limsup_est;
    report.envelope_lsc_gap =
        std::max(report.envelope_lsc_gap, diag.value - diag.liminf_est);
    report.envelope_usc_gap =
        std::max(report.envelope_usc_gap, diag.limsup_est - diag.value);
    const double eps_e = tols.eps_envelope * x.norm();
    const double spread = diag.limsup_est - diag.liminf_est;
    if (spread > eps_e || diag.value - diag.liminf_est > eps_e) probes_regular = false;
    if (spread > 10.0 * eps_e) probes_irregular = true;
    report.probes.push_back(std::move(diag));
  }

  const double max_deficit = std::max(report.lsc_deficit, report.usc_deficit);
  if (max_deficit <= tols.eps_hausdorff && probes_regular)
    report.verdict = RegularityVerdict::regular;
  else if (max_deficit > 10.0 * tols.eps_hausdorff || probes_irregular)
    report.verdict = RegularityVerdict::irregular;
  else
    report.verdict = RegularityVerdict::inconclusive;

  // Cloud verdicts: the constant sequence contributes the fiber at a itself.
  const double accept_tol = 10.0 * tols.eps_hausdorff;
  std::vector<std::vector<Vec>> full_clouds = {family.fiber(a).points()};
  std::vector<std::vector<Vec>> cluster_clouds = {family.fiber(a).points()};
  for (int idx : valid) {
    const SequenceSpec& spec = specs[static_cast<size_t>(idx)];
    full_clouds.push_back(
        limit_fiber(family, a, spec, /*full=*/true, accept_tol, tols.gap_tol).cloud);
    cluster_clouds.push_back(
        limit_fiber(family, a, spec, /*full=*/false, accept_tol, tols.gap_tol).cloud);
  }
  auto all_pairs_within = [&](const std::vector<std::vector<Vec>>& clouds, bool hulls) {
    for (size_t i = 0; i < clouds.size(); ++i) {
      for (size_t j = i + 1; j < clouds.size(); ++j) {
        const double d = hulls ? hull_hausdorff(clouds[i], clouds[j], tols.gap_tol)
                               : cloud_hausdorff(clouds[i], clouds[j]);
        if (!(d <= accept_tol)) return false;
      }
    }
    return true;
  };
  report.c_cloud_regular = all_pairs_within(full_clouds, false);
  report.c1_cloud_regular = all_pairs_within(cluster_clouds, false);
  report.c2_cloud_regular = all_pairs_within(cluster_clouds, true);

  report.resolution_note =
      "finite sampling: limit sets use " + std::to_string(valid.size()) +
      " geometric sequences, so 'regular' is evidence at the configured "
      "resolution while 'irregular' is a certificate; the intersection over "
      "all approach sequences is under-sampled by construction";
  return report;
}

}  // namespace conedesc
