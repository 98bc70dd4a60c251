#include "conedesc/descent.hpp"

#include <cmath>
#include <stdexcept>

#include "conedesc/cone.hpp"
#include "conedesc/log.hpp"

namespace conedesc {

std::string to_string(DescentStatus s) {
  switch (s) {
    case DescentStatus::critical: return "critical";
    case DescentStatus::max_iterations: return "max_iterations";
    case DescentStatus::line_search_failed: return "line_search_failed";
    case DescentStatus::subproblem_failed: return "subproblem_failed";
  }
  return "?";
}

namespace {

void check_dims(const FiberFamily& family, const ObjectiveFamily& obj) {
  if (family.value_dim() != obj.value_dim())
    throw std::invalid_argument("cone family and objective value dimensions differ");
}

std::vector<Vec> pullbacks(const GeneratorSet& fib, const Mat& jac) {
  std::vector<Vec> g;
  g.reserve(static_cast<size_t>(fib.size()));
  for (const Vec& c : fib.points()) g.push_back(jac.transpose() * c);
  return g;
}

void validate_ls_params(const LineSearchParams& p) {
  if (!(p.sigma > 0.0 && p.sigma < 1.0))
    throw std::invalid_argument("line search sigma must lie in (0,1)");
  if (!(p.beta > 0.0 && p.beta < 1.0))
    throw std::invalid_argument("line search beta must lie in (0,1)");
  if (!(p.t0 > 0.0)) throw std::invalid_argument("line search t0 must be positive");
  if (p.max_backtracks < 0)
    throw std::invalid_argument("line search max_backtracks must be >= 0");
}

}  // namespace

double direction_gauge(const FiberFamily& family, const Vec& a, const ObjectiveFamily& obj,
                       const Vec& s, const Vec& alpha, const Vec& nu) {
  check_dims(family, obj);
  if (nu.size() != obj.decision_dim())
    throw std::invalid_argument("direction dimension must match the decision space");
  if (!all_finite(nu)) throw std::invalid_argument("direction must be finite");
  const Mat jac = obj.jacobian(s, alpha);
  return variational_gauge(family, a, jac * nu);
}

DescentResult steepest_descent_direction(const FiberFamily& family, const Vec& a,
                                         const ObjectiveFamily& obj, const Vec& s,
                                         const Vec& alpha, double gap_tol,
                                         double crit_tol) {
  check_dims(family, obj);
  if (!(crit_tol > 0.0)) throw std::invalid_argument("crit_tol must be positive");
  const Mat jac = obj.jacobian(s, alpha);
  if (!all_finite(jac)) throw std::invalid_argument("Jacobian is not finite");
  const GeneratorSet fib = family.fiber(a);

  DescentResult res;
  res.subproblem = min_norm_point(pullbacks(fib, jac), gap_tol);
  res.nu = -res.subproblem.point;
  res.m_value = -0.5 * res.subproblem.sq_norm;
  res.weights = res.subproblem.weights;
  res.critical = res.nu.norm() <= crit_tol;
  if (!res.subproblem.converged)
    log_warn("steepest_descent_direction: min-norm subproblem did not certify");
  return res;
}

bool is_critical(const FiberFamily& family, const Vec& a, const ObjectiveFamily& obj,
                 const Vec& s, const Vec& alpha, double crit_tol, double gap_tol) {
  return steepest_descent_direction(family, a, obj, s, alpha, gap_tol, crit_tol).critical;
}

ArmijoResult armijo_step(const FiberFamily& family, const Vec& a, const ObjectiveFamily& obj,
                         const Vec& s, const Vec& alpha, const Vec& nu,
                         const LineSearchParams& params) {
  validate_ls_params(params);
  const Mat jac = obj.jacobian(s, alpha);
  const GeneratorSet fib = family.fiber(a);
  const double f_nu = gauge(fib, jac * nu);
  if (!(f_nu < 0.0))
    throw std::invalid_argument("armijo_step requires a descent direction (gauge < 0)");

  const Vec f0 = obj.value(s, alpha);
  const Vec linearization = jac * nu;
  ArmijoResult out;
  double t = params.t0;
  for (int k = 0; k <= params.max_backtracks; ++k) {
    const Vec ft = obj.value(s, alpha + t * nu);
    if (!all_finite(ft))
      throw std::runtime_error("armijo_step: objective is not finite along the ray");
    const Vec residual = ft - f0 - params.sigma * t * linearization;
    if (gauge(fib, residual) <= 0.0) {
      out.t = t;
      out.accepted = true;
      out.backtracks = k;
      return out;
    }
    t *= params.beta;
  }
  out.t = t / params.beta;  // last tried step
  out.accepted = false;
  out.backtracks = params.max_backtracks;
  return out;
}

IterationTrace run_descent(const FiberFamily& family, const Vec& a,
                           const ObjectiveFamily& obj, const Vec& s, const Vec& alpha0,
                           const LineSearchParams& params, double crit_tol, int max_iter,
                           double gap_tol) {
  if (!all_finite(alpha0)) throw std::invalid_argument("run_descent: alpha0 must be finite");
  if (max_iter < 0) throw std::invalid_argument("run_descent: max_iter must be >= 0");
  validate_ls_params(params);

  IterationTrace trace;
  const GeneratorSet fib = family.fiber(a);
  Vec alpha = alpha0;
  trace.status = DescentStatus::max_iterations;
  for (int k = 0; k <= max_iter; ++k) {
    DescentResult dir = steepest_descent_direction(family, a, obj, s, alpha, gap_tol, crit_tol);
    IterationRecord rec;
    rec.alpha = alpha;
    rec.nu = dir.nu;
    rec.m_value = dir.m_value;
    if (!dir.subproblem.converged) {
      trace.records.push_back(std::move(rec));
      trace.status = DescentStatus::subproblem_failed;
      break;
    }
    if (dir.critical) {
      trace.records.push_back(std::move(rec));
      trace.status = DescentStatus::critical;
      break;
    }
    if (k == max_iter) {
      trace.records.push_back(std::move(rec));
      trace.status = DescentStatus::max_iterations;
      break;
    }
    const ArmijoResult ls = armijo_step(family, a, obj, s, alpha, dir.nu, params);
    if (!ls.accepted) {
      trace.records.push_back(std::move(rec));
      trace.status = DescentStatus::line_search_failed;
      log_warn("run_descent: line search stalled at iteration " + std::to_string(k));
      break;
    }
    const Vec next = alpha + ls.t * dir.nu;
    rec.step = ls.t;
    rec.strict_decrease = lt(fib, obj.value(s, next), obj.value(s, alpha));
    trace.records.push_back(std::move(rec));
    alpha = next;
    ++trace.iterations;
  }
  trace.final_alpha = alpha;
  return trace;
}

std::vector<ContinuityRow> continuity_probe(const FiberFamily& family, const Vec& a,
                                            const ObjectiveFamily& obj, const Vec& s,
                                            const Vec& alpha,
                                            const std::vector<double>& radii,
                                            double gap_tol) {
  if (radii.empty()) throw std::invalid_argument("continuity_probe: radii must be nonempty");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0) || !std::isfinite(radii[i]))
      throw std::invalid_argument("continuity_probe: radii must be finite and >= 0");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw std::invalid_argument("continuity_probe: radii must decrease");
  }
  const DescentResult base =
      steepest_descent_direction(family, a, obj, s, alpha, gap_tol);

  std::vector<ContinuityRow> rows;
  for (const double delta : radii) {
    ContinuityRow row;
    row.radius = delta;
    auto visit = [&](const Vec& pa, const Vec& ps, const Vec& palpha) {
      const DescentResult r =
          steepest_descent_direction(family, pa, obj, ps, palpha, gap_tol);
      row.max_dnu = std::max(row.max_dnu, (r.nu - base.nu).norm());
      row.max_dm = std::max(row.max_dm, std::abs(r.m_value - base.m_value));
    };
    for (int i = 0; i < a.size(); ++i) {
      for (double sign : {1.0, -1.0}) {
        Vec pa = a;
        pa(i) += sign * delta;
        if (!family.domain().contains(pa, 0.0)) {
          ++row.skipped;
          continue;
        }
        visit(pa, s, alpha);
      }
    }
    for (int i = 0; i < s.size(); ++i) {
      for (double sign : {1.0, -1.0}) {
        Vec ps = s;
        ps(i) += sign * delta;
        visit(a, ps, alpha);
      }
    }
    for (int i = 0; i < alpha.size(); ++i) {
      for (double sign : {1.0, -1.0}) {
        Vec pv = alpha;
        pv(i) += sign * delta;
        visit(a, s, pv);
      }
    }
    if (row.skipped > 0)
      log_info("continuity_probe: skipped " + std::to_string(row.skipped) +
               " out-of-domain perturbations at radius " + std::to_string(delta));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace conedesc
