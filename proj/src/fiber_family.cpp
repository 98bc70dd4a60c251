#include "conedesc/fiber_family.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace conedesc {

bool Box::contains(const Vec& a, double tol) const {
  if (a.size() != lo.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    if (a(i) < lo(i) - tol || a(i) > hi(i) + tol) return false;
  return true;
}

double Box::scale() const {
  double s = 0.0;
  for (int i = 0; i < lo.size(); ++i) s = std::max(s, hi(i) - lo(i));
  return s;
}

FiberKind fiber_kind_from_string(const std::string& s) {
  if (s == "constant") return FiberKind::constant;
  if (s == "rotation") return FiberKind::rotation;
  if (s == "jump") return FiberKind::jump;
  if (s == "pinch") return FiberKind::pinch;
  if (s == "expand") return FiberKind::expand;
  if (s == "interpolation") return FiberKind::interpolation;
  if (s == "table") return FiberKind::table;
  throw std::invalid_argument("unknown fiber kind: " + s);
}

std::string to_string(FiberKind k) {
  switch (k) {
    case FiberKind::constant: return "constant";
    case FiberKind::rotation: return "rotation";
    case FiberKind::jump: return "jump";
    case FiberKind::pinch: return "pinch";
    case FiberKind::expand: return "expand";
    case FiberKind::interpolation: return "interpolation";
    case FiberKind::table: return "table";
  }
  return "?";
}

namespace {

Box validate_box(Box box) {
  if (box.lo.size() == 0 || box.lo.size() != box.hi.size())
    throw std::invalid_argument("domain box dimensions inconsistent");
  if (!all_finite(box.lo) || !all_finite(box.hi))
    throw std::invalid_argument("domain box must be finite");
  for (int i = 0; i < box.lo.size(); ++i)
    if (!(box.lo(i) < box.hi(i)))
      throw std::invalid_argument("domain box must have positive extent");
  return box;
}

void require_scalar_domain(const Box& box, const char* kind) {
  if (box.dim() != 1)
    throw std::invalid_argument(std::string(kind) + " family requires a one-dimensional domain");
}

std::vector<Vec> append(std::vector<Vec> base, const std::vector<Vec>& extra) {
  for (const Vec& e : extra) base.push_back(e);
  return base;
}

}  // namespace

FiberFamily::FiberFamily(FiberKind kind, Box domain, double bound)
    : kind_(kind), domain_(validate_box(std::move(domain))), bound_(bound) {
  if (!(bound_ > 0.0)) throw std::invalid_argument("family bound must be positive");
}

void FiberFamily::validate_fibers() const {
  for (const GeneratorSet& s : sets_) {
    if (s.dim() != value_dim())
      throw std::invalid_argument("fiber sets must share the value dimension");
    if (s.max_norm() > bound_)
      throw std::invalid_argument("fiber generator exceeds the declared bound");
  }
  for (const Vec& e : extra_) {
    if (e.size() != value_dim())
      throw std::invalid_argument("extra generators must share the value dimension");
    if (!all_finite(e)) throw std::invalid_argument("extra generators must be finite");
    if (e.norm() > bound_)
      throw std::invalid_argument("extra generator exceeds the declared bound");
  }
}

FiberFamily FiberFamily::constant(GeneratorSet base, Box domain, double bound) {
  FiberFamily f(FiberKind::constant, std::move(domain), bound);
  f.sets_.push_back(std::move(base));
  f.validate_fibers();
  return f;
}

FiberFamily FiberFamily::rotation(GeneratorSet base, double rate, Box domain, double bound) {
  FiberFamily f(FiberKind::rotation, std::move(domain), bound);
  require_scalar_domain(f.domain_, "rotation");
  if (base.dim() != 2)
    throw std::invalid_argument("rotation family requires a two-dimensional value space");
  if (!std::isfinite(rate)) throw std::invalid_argument("rotation rate must be finite");
  f.sets_.push_back(std::move(base));
  f.rate_ = rate;
  f.validate_fibers();
  return f;
}

FiberFamily FiberFamily::jump(GeneratorSet base, GeneratorSet base2, double breakpoint,
                              Box domain, double bound) {
  FiberFamily f(FiberKind::jump, std::move(domain), bound);
  require_scalar_domain(f.domain_, "jump");
  if (base.dim() != base2.dim())
    throw std::invalid_argument("jump branches must share the value dimension");
  f.sets_.push_back(std::move(base));
  f.sets_.push_back(std::move(base2));
  f.breakpoint_ = breakpoint;
  f.validate_fibers();
  return f;
}

FiberFamily FiberFamily::pinch(GeneratorSet base, std::vector<Vec> extra, double breakpoint,
                               Box domain, double bound) {
  FiberFamily f(FiberKind::pinch, std::move(domain), bound);
  require_scalar_domain(f.domain_, "pinch");
  if (extra.empty()) throw std::invalid_argument("pinch family needs extra generators");
  f.sets_.push_back(std::move(base));
  f.extra_ = std::move(extra);
  f.breakpoint_ = breakpoint;
  f.validate_fibers();
  return f;
}

FiberFamily FiberFamily::expand(GeneratorSet base, std::vector<Vec> extra, double breakpoint,
                                Box domain, double bound) {
  FiberFamily f(FiberKind::expand, std::move(domain), bound);
  require_scalar_domain(f.domain_, "expand");
  if (extra.empty()) throw std::invalid_argument("expand family needs extra generators");
  f.sets_.push_back(std::move(base));
  f.extra_ = std::move(extra);
  f.breakpoint_ = breakpoint;
  f.validate_fibers();
  return f;
}

FiberFamily FiberFamily::interpolation(GeneratorSet base, GeneratorSet base2, Box domain,
                                       double bound) {
  FiberFamily f(FiberKind::interpolation, std::move(domain), bound);
  require_scalar_domain(f.domain_, "interpolation");
  if (base.dim() != base2.dim())
    throw std::invalid_argument("interpolation endpoints must share the value dimension");
  if (base.size() != base2.size())
    throw std::invalid_argument("interpolation endpoints must pair up generators");
  f.sets_.push_back(std::move(base));
  f.sets_.push_back(std::move(base2));
  f.validate_fibers();
  return f;
}

FiberFamily FiberFamily::table(std::vector<double> nodes, std::vector<GeneratorSet> sets,
                               Box domain, double bound) {
  FiberFamily f(FiberKind::table, std::move(domain), bound);
  require_scalar_domain(f.domain_, "table");
  if (nodes.empty() || nodes.size() != sets.size())
    throw std::invalid_argument("table family needs one set per node");
  for (size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw std::invalid_argument("table nodes must be strictly increasing");
  f.sets_ = std::move(sets);
  f.nodes_ = std::move(nodes);
  f.validate_fibers();
  return f;
}

int FiberFamily::value_dim() const { return sets_.front().dim(); }

GeneratorSet FiberFamily::fiber(const Vec& a) const {
  if (!domain_.contains(a, 1e-12)) {
    std::ostringstream oss;
    oss << "parameter point outside the domain box: [";
    for (int i = 0; i < a.size(); ++i) oss << (i ? ", " : "") << a(i);
    oss << "]";
    throw std::domain_error(oss.str());
  }
  switch (kind_) {
    case FiberKind::constant:
      return sets_[0];
    case FiberKind::rotation: {
      const double angle = rate_ * a(0);
      const double c = std::cos(angle), s = std::sin(angle);
      std::vector<Vec> pts;
      pts.reserve(static_cast<size_t>(sets_[0].size()));
      for (const Vec& g : sets_[0].points()) {
        Vec r(2);
        r << c * g(0) - s * g(1), s * g(0) + c * g(1);
        pts.push_back(r);
      }
      return GeneratorSet(std::move(pts));
    }
    case FiberKind::jump:
      return a(0) <= breakpoint_ ? sets_[0] : sets_[1];
    case FiberKind::pinch:
      if (a(0) == breakpoint_) return GeneratorSet(append(sets_[0].points(), extra_));
      return sets_[0];
    case FiberKind::expand:
      if (a(0) == breakpoint_) return sets_[0];
      return GeneratorSet(append(sets_[0].points(), extra_));
    case FiberKind::interpolation: {
      const double t =
          (a(0) - domain_.lo(0)) / (domain_.hi(0) - domain_.lo(0));
      std::vector<Vec> pts;
      pts.reserve(static_cast<size_t>(sets_[0].size()));
      for (int i = 0; i < sets_[0].size(); ++i)
        pts.push_back((1.0 - t) * sets_[0].point(i) + t * sets_[1].point(i));
      return GeneratorSet(std::move(pts));
    }
    case FiberKind::table: {
      size_t best = 0;
      double best_dist = std::abs(a(0) - nodes_[0]);
      for (size_t i = 1; i < nodes_.size(); ++i) {
        const double dist = std::abs(a(0) - nodes_[i]);
        if (dist < best_dist) {
          best = i;
          best_dist = dist;
        }
      }
      return sets_[best];
    }
  }
  throw std::logic_error("unreachable fiber kind");
}

FiberConditionReport check_fiber_conditions(const FiberFamily& family,
                                            const std::vector<Vec>& grid) {
  if (grid.empty()) throw std::invalid_argument("check_fiber_conditions: empty grid");
  FiberConditionReport report;
  for (const Vec& a : grid) {
    GeneratorSet fib = family.fiber(a);  // throws if out of domain
    report.max_generator_norm = std::max(report.max_generator_norm, fib.max_norm());
    std::ostringstream where;
    where << "a=[";
    for (int i = 0; i < a.size(); ++i) where << (i ? ", " : "") << a(i);
    where << "]";
    if (fib.max_norm() > family.bound()) {
      std::ostringstream oss;
      oss << where.str() << ": generator norm " << fib.max_norm()
          << " exceeds declared bound " << family.bound();
      report.violations.push_back(oss.str());
    }
    if (!fib.spans_value_space())
      report.violations.push_back(where.str() + ": generators do not span the value space");
  }
  report.pass = report.violations.empty();
  return report;
}

std::vector<Vec> domain_grid(const Box& domain, int points_per_axis) {
  if (points_per_axis < 2) throw std::invalid_argument("domain_grid: need >= 2 points per axis");
  const int d = domain.dim();
  std::vector<Vec> grid;
  std::vector<int> idx(static_cast<size_t>(d), 0);
  while (true) {
    Vec a(d);
    for (int i = 0; i < d; ++i) {
      const double t = static_cast<double>(idx[static_cast<size_t>(i)]) /
                       static_cast<double>(points_per_axis - 1);
      a(i) = domain.lo(i) + t * (domain.hi(i) - domain.lo(i));
    }
    grid.push_back(a);
    int axis = 0;
    while (axis < d) {
      if (++idx[static_cast<size_t>(axis)] < points_per_axis) break;
      idx[static_cast<size_t>(axis)] = 0;
      ++axis;
    }
    if (axis == d) break;
  }
  return grid;
}

}  // namespace conedesc
