#include "conedesc/cone.hpp"

#include <stdexcept>

namespace conedesc {

namespace {

void check_dim(const GeneratorSet& c, const Vec& x) {
  if (x.size() != c.dim())
    throw std::invalid_argument("vector dimension does not match generators");
}

void check_tol(const OrderTolerance& tol) {
  if (!(tol.eps_membership >= 0.0) || !(tol.eps_strict > tol.eps_membership))
    throw std::invalid_argument("require 0 <= eps_membership < eps_strict");
}

}  // namespace

double gauge(const GeneratorSet& c, const Vec& x) {
  check_dim(c, x);
  double best = c.point(0).dot(x);
  for (int i = 1; i < c.size(); ++i) best = std::max(best, c.point(i).dot(x));
  return best;
}

bool cone_contains(const GeneratorSet& c, const Vec& x, const OrderTolerance& tol) {
  check_dim(c, x);
  check_tol(tol);
  double worst = c.point(0).dot(x);
  for (int i = 1; i < c.size(); ++i) worst = std::min(worst, c.point(i).dot(x));
  return worst >= -tol.eps_membership;
}

bool interior_contains(const GeneratorSet& c, const Vec& x, const OrderTolerance& tol) {
  check_dim(c, x);
  check_tol(tol);
  bool any_nonzero = false;
  bool inside = true;
  for (int i = 0; i < c.size(); ++i) {
    const double norm = c.point(i).norm();
    if (norm == 0.0) continue;
    any_nonzero = true;
    if (c.point(i).dot(x) < tol.eps_strict * norm) inside = false;
  }
  if (!any_nonzero)
    throw std::invalid_argument("all generators are zero; the order is degenerate");
  return inside;
}

bool leq(const GeneratorSet& c, const Vec& x, const Vec& y, const OrderTolerance& tol) {
  if (x.size() != y.size()) throw std::invalid_argument("order endpoints must share a dimension");
  return cone_contains(c, y - x, tol);
}

bool lt(const GeneratorSet& c, const Vec& x, const Vec& y, const OrderTolerance& tol) {
  if (x.size() != y.size()) throw std::invalid_argument("order endpoints must share a dimension");
  return interior_contains(c, y - x, tol);
}

}  // namespace conedesc
