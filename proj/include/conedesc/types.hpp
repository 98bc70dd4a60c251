#pragma once

#include <Eigen/Dense>

namespace conedesc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Numerical slack for order tests. eps_membership is the slack allowed in
/// cone membership; eps_strict is the margin required of unit-normalized
/// generators in interior tests. Invariant: 0 <= eps_membership < eps_strict.
struct OrderTolerance {
  double eps_membership = 1e-12;
  double eps_strict = 1e-9;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

}  // namespace conedesc
