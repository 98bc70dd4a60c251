#include "conedesc/generator_set.hpp"

#include <stdexcept>

namespace conedesc {

namespace {
constexpr double kDedupTol = 1e-12;
}

GeneratorSet::GeneratorSet(std::vector<Vec> points) {
  if (points.empty()) throw std::invalid_argument("generator set must be nonempty");
  const auto dim = points.front().size();
  if (dim == 0) throw std::invalid_argument("generators must have positive dimension");
  points_.reserve(points.size());
  for (const Vec& p : points) {
    if (p.size() != dim)
      throw std::invalid_argument("generators must share a common dimension");
    if (!all_finite(p))
      throw std::invalid_argument("generators must have finite entries");
    bool duplicate = false;
    for (const Vec& kept : points_) {
      if ((kept - p).norm() <= kDedupTol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) points_.push_back(p);
  }
  max_norm_ = 0.0;
  for (const Vec& p : points_) max_norm_ = std::max(max_norm_, p.norm());
}

bool GeneratorSet::spans_value_space(double tol) const {
  Mat g(dim(), size());
  for (int i = 0; i < size(); ++i) g.col(i) = points_[static_cast<size_t>(i)];
  Eigen::ColPivHouseholderQR<Mat> qr(g);
  qr.setThreshold(tol);
  return qr.rank() == dim();
}

GeneratorSet orthant_generators(int m) {
  if (m < 1) throw std::invalid_argument("orthant_generators requires m >= 1");
  std::vector<Vec> points;
  points.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) points.push_back(Vec::Unit(m, i));
  return GeneratorSet(std::move(points));
}

}  // namespace conedesc
