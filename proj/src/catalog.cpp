#include "conedesc/problem.hpp"

namespace conedesc {

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Box box1(double lo, double hi) {
  Box b;
  b.lo = v1(lo);
  b.hi = v1(hi);
  return b;
}

GeneratorSet orthant2() { return orthant_generators(2); }

AnalysisParams base_analysis(double bound, double domain_scale, Vec a0, Vec alpha0,
                             int seq_length = 24) {
  AnalysisParams an;
  an.tol_haus = 1e-6 * bound;
  an.tol_env = 1e-6 * bound;
  an.seq.length = seq_length;
  an.seq.r0 = domain_scale / 8.0;
  an.a0 = std::move(a0);
  an.alpha0 = std::move(alpha0);
  an.s0 = Vec::Zero(0);
  an.radii = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  return an;
}

QuadraticComponent sphere_quadratic(const Vec& center) {
  QuadraticComponent c;
  const auto n = center.size();
  c.quad = Mat::Identity(n, n);
  c.center = center;
  c.s_shift = Mat();
  c.offset = 0.0;
  return c;
}

ObjectiveFamily two_bowl_objective(const Vec& c1, const Vec& c2) {
  return ObjectiveFamily::quadratic({sphere_quadratic(c1), sphere_quadratic(c2)}, 2, 0);
}

ObjectiveFamily skew_affine_objective() {
  Mat m(2, 2);
  m << 1.0, 1.0, -1.0, 1.0;
  return ObjectiveFamily::affine(m, Vec::Zero(2));
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;

  {
    // Single-objective classic: C = {1}, half-norm-squared objective.
    ProblemSpec spec{
        SpaceDims{2, 1, 1, 0},
        FiberFamily::constant(GeneratorSet({v1(1.0)}), box1(-1.0, 1.0), 1.5),
        ObjectiveFamily::quadratic({sphere_quadratic(v2(0.0, 0.0))}, 2, 0),
        base_analysis(1.5, 2.0, v1(0.0), v2(1.0, 0.0))};
    out.push_back({"scalar_classic",
                   "single objective, C = {1}; descent reduces to the negative gradient",
                   std::move(spec)});
  }
  {
    ProblemSpec spec{SpaceDims{2, 2, 1, 0},
                     FiberFamily::constant(orthant2(), box1(-1.0, 1.0), 2.0),
                     two_bowl_objective(v2(0.0, 0.0), v2(2.0, 0.0)),
                     base_analysis(2.0, 2.0, v1(0.0), v2(1.0, 1.0))};
    out.push_back({"biobjective_orthant",
                   "two quadratic bowls under the orthant order; critical set is the "
                   "segment between the minimizers",
                   std::move(spec)});
  }
  {
    ProblemSpec spec{SpaceDims{2, 2, 1, 0},
                     FiberFamily::constant(orthant2(), box1(-1.0, 1.0), 2.0),
                     two_bowl_objective(v2(0.0, 0.0), v2(1.0, 1.0)),
                     base_analysis(2.0, 2.0, v1(0.0), v2(1.0, 0.0))};
    out.push_back({"constant_orthant",
                   "parameter-independent orthant fibers; regular everywhere",
                   std::move(spec)});
  }
  {
    ProblemSpec spec{SpaceDims{2, 2, 1, 0},
                     FiberFamily::rotation(orthant2(), 1.0, box1(-1.0, 1.0), 2.0),
                     two_bowl_objective(v2(0.0, 0.0), v2(2.0, 0.0)),
                     base_analysis(2.0, 2.0, v1(0.0), v2(1.0, 1.0), /*seq_length=*/48)};
    out.push_back({"rotation",
                   "orthant generators rotated at unit rate; continuous, regular family",
                   std::move(spec)});
  }
  {
    AnalysisParams an = base_analysis(3.0, 2.0, v1(0.0), v2(1.0, 1.0));
    const double r5 = std::sqrt(5.0);
    an.probes = {v2(1.0, 0.0),          v2(-1.0, 0.0),
                 v2(0.0, 1.0),          v2(0.0, -1.0),
                 v2(1.0, 1.0) / std::sqrt(2.0),  v2(-1.0, -1.0) / std::sqrt(2.0),
                 v2(1.0, 2.0) / r5,     v2(-1.0, -2.0) / r5};
    ProblemSpec spec{SpaceDims{2, 2, 1, 0},
                     FiberFamily::jump(GeneratorSet({v2(1.0, 0.0), v2(0.0, 1.0)}),
                                       GeneratorSet({v2(2.0, 0.0), v2(0.0, 1.0)}), 0.0,
                                       box1(-1.0, 1.0), 3.0),
                     skew_affine_objective(), std::move(an)};
    out.push_back({"jump",
                   "fiber switches at a = 0; irregular on both semicontinuity channels",
                   std::move(spec)});
  }
  {
    ProblemSpec spec{SpaceDims{2, 2, 1, 0},
                     FiberFamily::pinch(GeneratorSet({v2(1.0, 0.0), v2(0.0, 1.0)}),
                                        {v2(1.0, 1.0)}, 0.0, box1(-1.0, 1.0), 2.0),
                     skew_affine_objective(),
                     base_analysis(2.0, 2.0, v1(0.0), v2(1.0, 1.0))};
    out.push_back({"pinch",
                   "fiber at a = 0 strictly exceeds its neighbors; lower semicontinuity "
                   "of the multifunction fails there",
                   std::move(spec)});
  }
  {
    ProblemSpec spec{SpaceDims{2, 2, 1, 0},
                     FiberFamily::expand(GeneratorSet({v2(1.0, 0.0), v2(0.0, 1.0)}),
                                         {v2(1.0, 1.0)}, 0.0, box1(-1.0, 1.0), 2.0),
                     skew_affine_objective(),
                     base_analysis(2.0, 2.0, v1(0.0), v2(1.0, 1.0))};
    out.push_back({"expand",
                   "neighbors strictly exceed the fiber at a = 0; upper semicontinuity "
                   "of the multifunction fails there",
                   std::move(spec)});
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

}  // namespace conedesc
