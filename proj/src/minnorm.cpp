#include "conedesc/minnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conedesc/log.hpp"

namespace conedesc {

namespace {

constexpr double kKeepTol = 1e-12;       // weight below this drops out
constexpr double kSingularTol = 1e-12;   // active-set solve singularity
constexpr double kRidge = 1e-14;

void validate_points(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("min_norm_point: empty point set");
  const auto dim = points.front().size();
  if (dim == 0) throw std::invalid_argument("min_norm_point: zero-dimensional points");
  for (const Vec& p : points) {
    if (p.size() != dim) throw std::invalid_argument("min_norm_point: dimension mismatch");
    if (!all_finite(p)) throw std::invalid_argument("min_norm_point: non-finite point");
  }
}

Vec combination(const std::vector<Vec>& points, const std::vector<int>& active,
                const std::vector<double>& w) {
  Vec x = Vec::Zero(points.front().size());
  for (size_t i = 0; i < active.size(); ++i)
    x += w[i] * points[static_cast<size_t>(active[i])];
  return x;
}

// Affine minimizer of |sum w_i s_i|^2 over sum w = 1, for the corral
// `active`. Bordered Gram system solved by full-pivot LU.
bool affine_minimizer(const std::vector<Vec>& points, const std::vector<int>& active,
                      double ridge, Vec* w_out) {
  const int k = static_cast<int>(active.size());
  Mat kkt = Mat::Zero(k + 1, k + 1);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      const double g = points[static_cast<size_t>(active[static_cast<size_t>(i)])]
                           .dot(points[static_cast<size_t>(active[static_cast<size_t>(j)])]);
      kkt(i, j) = g;
      kkt(j, i) = g;
    }
    kkt(i, i) += ridge;
    kkt(i, k) = 1.0;
    kkt(k, i) = 1.0;
  }
  Vec rhs = Vec::Zero(k + 1);
  rhs(k) = 1.0;
  Eigen::FullPivLU<Mat> lu(kkt);
  lu.setThreshold(kSingularTol);
  if (!lu.isInvertible()) return false;
  Vec sol = lu.solve(rhs);
  if (!sol.allFinite()) return false;
  *w_out = sol.head(k);
  return true;
}

MinNormResult assemble(const std::vector<Vec>& points, const std::vector<int>& active,
                       const std::vector<double>& w, int iterations, bool converged) {
  MinNormResult res;
  res.weights.lambda.assign(points.size(), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < active.size(); ++i) {
    res.weights.lambda[static_cast<size_t>(active[i])] += w[i];
    total += w[i];
  }
  if (total > 0.0) {
    for (double& l : res.weights.lambda) l /= total;
  }
  res.point = Vec::Zero(points.front().size());
  for (size_t i = 0; i < points.size(); ++i)
    res.point += res.weights.lambda[i] * points[i];
  res.sq_norm = res.point.squaredNorm();
  res.iterations = iterations;
  res.converged = converged;
  return res;
}

}  // namespace

namespace detail {

MinNormResult away_step_frank_wolfe(const std::vector<Vec>& points,
                                    double gap_tol, int max_iter) {
  validate_points(points);
  const size_t p = points.size();
  std::vector<double> w(p, 0.0);
  size_t j0 = 0;
  for (size_t i = 1; i < p; ++i)
    if (points[i].squaredNorm() < points[j0].squaredNorm()) j0 = i;
  w[j0] = 1.0;
  Vec x = points[j0];

  int iters = 0;
  bool converged = false;
  while (iters < max_iter) {
    ++iters;
    const double xsq = x.squaredNorm();
    size_t jmin = 0;
    double dmin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < p; ++i) {
      const double d = points[i].dot(x);
      if (d < dmin) {
        dmin = d;
        jmin = i;
      }
    }
    if (dmin >= xsq - gap_tol) {
      converged = true;
      break;
    }
    size_t jmax = 0;
    double dmax = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < p; ++i) {
      if (w[i] <= 0.0) continue;
      const double d = points[i].dot(x);
      if (d > dmax) {
        dmax = d;
        jmax = i;
      }
    }
    const Vec d_fw = points[jmin] - x;
    const Vec d_aw = x - points[jmax];
    const bool use_away = -x.dot(d_aw) > -x.dot(d_fw) && w[jmax] < 1.0;
    const Vec& dir = use_away ? d_aw : d_fw;
    const double denom = dir.squaredNorm();
    if (denom <= 0.0) break;
    const double tmax = use_away ? w[jmax] / (1.0 - w[jmax]) : 1.0;
    const double t = std::clamp(-x.dot(dir) / denom, 0.0, tmax);
    if (t <= 0.0) break;
    if (use_away) {
      for (double& wi : w) wi *= 1.0 + t;
      w[jmax] -= t;
    } else {
      for (double& wi : w) wi *= 1.0 - t;
      w[jmin] += t;
    }
    for (double& wi : w) wi = std::max(wi, 0.0);
    x += t * dir;
    if (iters % 64 == 0) {
      // control drift between x and its weights
      x.setZero();
      for (size_t i = 0; i < p; ++i) x += w[i] * points[i];
    }
  }

  std::vector<int> active;
  std::vector<double> wa;
  for (size_t i = 0; i < p; ++i) {
    if (w[i] > 0.0) {
      active.push_back(static_cast<int>(i));
      wa.push_back(w[i]);
    }
  }
  if (active.empty()) {
    active.push_back(static_cast<int>(j0));
    wa.push_back(1.0);
  }
  return assemble(points, active, wa, iters, converged);
}

}  // namespace detail

MinNormResult min_norm_point(const std::vector<Vec>& points, double gap_tol) {
  validate_points(points);
  if (!(gap_tol > 0.0)) throw std::invalid_argument("min_norm_point: gap_tol must be positive");
  const int p = static_cast<int>(points.size());
  const int dim = static_cast<int>(points.front().size());
  const int max_iter = 10 * p * dim + 1000;

  if (p == 1) {
    MinNormResult res;
    res.point = points.front();
    res.weights.lambda = {1.0};
    res.sq_norm = res.point.squaredNorm();
    res.iterations = 0;
    res.converged = true;
    return res;
  }

  int j0 = 0;
  for (int i = 1; i < p; ++i)
    if (points[static_cast<size_t>(i)].squaredNorm() <
        points[static_cast<size_t>(j0)].squaredNorm())
      j0 = i;
  std::vector<int> active = {j0};
  std::vector<double> w = {1.0};
  Vec x = points[static_cast<size_t>(j0)];

  int iters = 0;
  bool converged = false;
  bool singular = false;
  bool cap_hit = false;

  while (true) {
    if (iters >= max_iter) {
      cap_hit = true;
      break;
    }
    ++iters;
    const double xsq = x.squaredNorm();
    int jmin = 0;
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p; ++i) {
      const double d = points[static_cast<size_t>(i)].dot(x);
      if (d < dmin) {
        dmin = d;
        jmin = i;
      }
    }
    if (dmin >= xsq - gap_tol) {
      converged = true;
      break;
    }
    if (std::find(active.begin(), active.end(), jmin) != active.end()) {
      // the violating vertex is already in the corral: the affine solves
      // are not resolving it, hand over to Frank-Wolfe
      singular = true;
      break;
    }
    active.push_back(jmin);
    w.push_back(0.0);

    while (true) {
      if (iters >= max_iter) {
        cap_hit = true;
        break;
      }
      ++iters;
      Vec v;
      bool ok = affine_minimizer(points, active, 0.0, &v);
      if (!ok) ok = affine_minimizer(points, active, kRidge, &v);
      if (!ok && active.size() > 1) {
        // drop the smallest-weight member and try once more
        size_t drop = 0;
        for (size_t i = 1; i < w.size(); ++i)
          if (std::abs(w[i]) < std::abs(w[drop])) drop = i;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(drop));
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(drop));
        ok = affine_minimizer(points, active, kRidge, &v);
      }
      if (!ok) {
        singular = true;
        break;
      }
      if (v.minCoeff() > kKeepTol) {
        w.assign(v.data(), v.data() + v.size());
        x = combination(points, active, w);
        break;
      }
      double theta = 1.0;
      for (int i = 0; i < v.size(); ++i) {
        if (v(i) <= kKeepTol) {
          const double wi = w[static_cast<size_t>(i)];
          const double denom = wi - v(i);
          if (denom > 0.0) theta = std::min(theta, wi / denom);
        }
      }
      theta = std::clamp(theta, 0.0, 1.0);
      for (size_t i = 0; i < w.size(); ++i)
        w[i] += theta * (v(static_cast<Eigen::Index>(i)) - w[i]);
      for (size_t i = w.size(); i-- > 0;) {
        if (w[i] <= kKeepTol && w.size() > 1) {
          active.erase(active.begin() + static_cast<std::ptrdiff_t>(i));
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
        }
      }
      double total = 0.0;
      for (double wi : w) total += wi;
      if (total <= 0.0) {
        singular = true;
        break;
      }
      for (double& wi : w) wi /= total;
      x = combination(points, active, w);
    }
    if (singular || cap_hit) break;
  }

  if (singular) {
    log_info("min_norm_point: active-set path stalled, using Frank-Wolfe fallback");
    return detail::away_step_frank_wolfe(points, gap_tol, 50 * max_iter);
  }
  if (cap_hit) log_warn("min_norm_point: iteration cap reached before certificate");
  return assemble(points, active, w, iters, converged);
}

double dist_to_hull(const Vec& q, const std::vector<Vec>& points, double gap_tol) {
  validate_points(points);
  if (q.size() != points.front().size())
    throw std::invalid_argument("dist_to_hull: dimension mismatch");
  if (!all_finite(q)) throw std::invalid_argument("dist_to_hull: non-finite query");
  std::vector<Vec> shifted;
  shifted.reserve(points.size());
  for (const Vec& p : points) shifted.push_back(p - q);
  const MinNormResult res = min_norm_point(shifted, gap_tol);
  if (!res.converged) log_warn("dist_to_hull: subproblem did not certify");
  return std::sqrt(std::max(res.sq_norm, 0.0));
}

}  // namespace conedesc
