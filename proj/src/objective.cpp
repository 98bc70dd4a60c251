#include "conedesc/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace conedesc {

ObjectiveKind objective_kind_from_string(const std::string& s) {
  if (s == "affine") return ObjectiveKind::affine;
  if (s == "quadratic_vector") return ObjectiveKind::quadratic_vector;
  if (s == "trig_vector") return ObjectiveKind::trig_vector;
  if (s == "table_of_quadratics") return ObjectiveKind::table_of_quadratics;
  throw std::invalid_argument("unknown objective kind: " + s);
}

std::string to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::affine: return "affine";
    case ObjectiveKind::quadratic_vector: return "quadratic_vector";
    case ObjectiveKind::trig_vector: return "trig_vector";
    case ObjectiveKind::table_of_quadratics: return "table_of_quadratics";
  }
  return "?";
}

namespace {

void validate_component(const QuadraticComponent& c, int n, int q) {
  if (c.quad.rows() != n || c.quad.cols() != n)
    throw std::invalid_argument("quadratic component matrix must be n x n");
  if (!all_finite(c.quad) || !all_finite(c.center) || !std::isfinite(c.offset))
    throw std::invalid_argument("quadratic component must be finite");
  if ((c.quad - c.quad.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("quadratic component matrix must be symmetric");
  if (c.center.size() != n)
    throw std::invalid_argument("quadratic component center must have size n");
  if (c.s_shift.size() != 0 && (c.s_shift.rows() != n || c.s_shift.cols() != q))
    throw std::invalid_argument("quadratic component s_shift must be n x q");
  if (c.s_shift.size() != 0 && !all_finite(c.s_shift))
    throw std::invalid_argument("quadratic component s_shift must be finite");
}

Vec effective_center(const QuadraticComponent& c, const Vec& s) {
  if (c.s_shift.size() == 0 || s.size() == 0) return c.center;
  return c.center + c.s_shift * s;
}

}  // namespace

ObjectiveFamily ObjectiveFamily::affine(Mat matrix, Vec offset, std::vector<Mat> s_matrices) {
  ObjectiveFamily f(ObjectiveKind::affine);
  if (matrix.rows() == 0 || matrix.cols() == 0)
    throw std::invalid_argument("affine objective needs a nonempty matrix");
  if (!all_finite(matrix) || !all_finite(offset))
    throw std::invalid_argument("affine objective must be finite");
  if (offset.size() != matrix.rows())
    throw std::invalid_argument("affine offset must match the matrix rows");
  for (const Mat& mk : s_matrices) {
    if (mk.rows() != matrix.rows() || mk.cols() != matrix.cols() || !all_finite(mk))
      throw std::invalid_argument("affine s-matrices must match the base matrix shape");
  }
  f.m_ = static_cast<int>(matrix.rows());
  f.n_ = static_cast<int>(matrix.cols());
  f.q_ = static_cast<int>(s_matrices.size());
  f.matrix_ = std::move(matrix);
  f.offset_ = std::move(offset);
  f.s_matrices_ = std::move(s_matrices);
  return f;
}

ObjectiveFamily ObjectiveFamily::quadratic(std::vector<QuadraticComponent> components,
                                           int n, int q) {
  ObjectiveFamily f(ObjectiveKind::quadratic_vector);
  if (components.empty())
    throw std::invalid_argument("quadratic objective needs at least one component");
  if (n < 1 || q < 0) throw std::invalid_argument("bad quadratic objective dimensions");
  for (const QuadraticComponent& c : components) validate_component(c, n, q);
  f.n_ = n;
  f.q_ = q;
  f.m_ = static_cast<int>(components.size());
  f.tables_.push_back(std::move(components));
  return f;
}

ObjectiveFamily ObjectiveFamily::trig(Mat amplitude, Mat frequency, Mat phase, Mat s_phase) {
  ObjectiveFamily f(ObjectiveKind::trig_vector);
  const auto rows = amplitude.rows();
  const auto cols = amplitude.cols();
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("trig objective needs a nonempty amplitude matrix");
  if (frequency.rows() != rows || frequency.cols() != cols || phase.rows() != rows ||
      phase.cols() != cols)
    throw std::invalid_argument("trig coefficient matrices must share a shape");
  if (s_phase.size() != 0 && s_phase.rows() != rows)
    throw std::invalid_argument("trig s_phase must have one row per component");
  if (!all_finite(amplitude) || !all_finite(frequency) || !all_finite(phase) ||
      (s_phase.size() != 0 && !all_finite(s_phase)))
    throw std::invalid_argument("trig objective must be finite");
  f.m_ = static_cast<int>(rows);
  f.n_ = static_cast<int>(cols);
  f.q_ = s_phase.size() == 0 ? 0 : static_cast<int>(s_phase.cols());
  f.amplitude_ = std::move(amplitude);
  f.frequency_ = std::move(frequency);
  f.phase_ = std::move(phase);
  f.s_phase_ = std::move(s_phase);
  return f;
}

ObjectiveFamily ObjectiveFamily::quadratic_table(
    std::vector<double> s_nodes, std::vector<std::vector<QuadraticComponent>> tables,
    int n) {
  ObjectiveFamily f(ObjectiveKind::table_of_quadratics);
  if (s_nodes.size() < 2 || s_nodes.size() != tables.size())
    throw std::invalid_argument("quadratic table needs >= 2 nodes, one table per node");
  for (size_t i = 1; i < s_nodes.size(); ++i)
    if (!(s_nodes[i] > s_nodes[i - 1]))
      throw std::invalid_argument("quadratic table nodes must be strictly increasing");
  const size_t m = tables.front().size();
  if (m == 0) throw std::invalid_argument("quadratic table needs nonempty components");
  for (const auto& table : tables) {
    if (table.size() != m)
      throw std::invalid_argument("quadratic tables must share the component count");
    for (const QuadraticComponent& c : table) validate_component(c, n, 0);
  }
  f.n_ = n;
  f.q_ = 1;
  f.m_ = static_cast<int>(m);
  f.s_nodes_ = std::move(s_nodes);
  f.tables_ = std::move(tables);
  return f;
}

namespace {

// Blend weights for piecewise-linear interpolation over the node list;
// clamped at the ends.
struct TableBlend {
  size_t k0, k1;
  double w;  // weight of k1
};

TableBlend table_blend(const std::vector<double>& nodes, double s) {
  if (s <= nodes.front()) return {0, 0, 0.0};
  if (s >= nodes.back()) return {nodes.size() - 1, nodes.size() - 1, 0.0};
  size_t k = 1;
  while (nodes[k] < s) ++k;
  const double w = (s - nodes[k - 1]) / (nodes[k] - nodes[k - 1]);
  return {k - 1, k, w};
}

double quad_value(const QuadraticComponent& c, const Vec& s, const Vec& alpha) {
  const Vec d = alpha - effective_center(c, s);
  return 0.5 * d.dot(c.quad * d) + c.offset;
}

Vec quad_gradient(const QuadraticComponent& c, const Vec& s, const Vec& alpha) {
  return c.quad * (alpha - effective_center(c, s));
}

}  // namespace

Vec ObjectiveFamily::value(const Vec& s, const Vec& alpha) const {
  if (alpha.size() != n_) throw std::invalid_argument("objective: alpha must have size n");
  if (s.size() != q_) throw std::invalid_argument("objective: s must have size q");
  if (!all_finite(alpha) || !all_finite(s))
    throw std::invalid_argument("objective: non-finite evaluation point");
  switch (kind_) {
    case ObjectiveKind::affine: {
      Mat mat = matrix_;
      for (int k = 0; k < q_; ++k) mat += s(k) * s_matrices_[static_cast<size_t>(k)];
      return mat * alpha + offset_;
    }
    case ObjectiveKind::quadratic_vector: {
      Vec out(m_);
      for (int i = 0; i < m_; ++i)
        out(i) = quad_value(tables_[0][static_cast<size_t>(i)], s, alpha);
      return out;
    }
    case ObjectiveKind::trig_vector: {
      Vec out = Vec::Zero(m_);
      for (int i = 0; i < m_; ++i) {
        const double sp = q_ > 0 ? s_phase_.row(i).dot(s) : 0.0;
        for (int j = 0; j < n_; ++j)
          out(i) += amplitude_(i, j) *
                    std::sin(frequency_(i, j) * alpha(j) + phase_(i, j) + sp);
      }
      return out;
    }
    case ObjectiveKind::table_of_quadratics: {
      const TableBlend blend = table_blend(s_nodes_, s(0));
      Vec out(m_);
      const Vec empty(0);
      for (int i = 0; i < m_; ++i) {
        const double v0 = quad_value(tables_[blend.k0][static_cast<size_t>(i)], empty, alpha);
        const double v1 = quad_value(tables_[blend.k1][static_cast<size_t>(i)], empty, alpha);
        out(i) = (1.0 - blend.w) * v0 + blend.w * v1;
      }
      return out;
    }
  }
  throw std::logic_error("unreachable objective kind");
}

Mat ObjectiveFamily::jacobian(const Vec& s, const Vec& alpha) const {
  if (alpha.size() != n_) throw std::invalid_argument("objective: alpha must have size n");
  if (s.size() != q_) throw std::invalid_argument("objective: s must have size q");
  if (!all_finite(alpha) || !all_finite(s))
    throw std::invalid_argument("objective: non-finite evaluation point");
  switch (kind_) {
    case ObjectiveKind::affine: {
      Mat mat = matrix_;
      for (int k = 0; k < q_; ++k) mat += s(k) * s_matrices_[static_cast<size_t>(k)];
      return mat;
    }
    case ObjectiveKind::quadratic_vector: {
      Mat jac(m_, n_);
      for (int i = 0; i < m_; ++i)
        jac.row(i) = quad_gradient(tables_[0][static_cast<size_t>(i)], s, alpha).transpose();
      return jac;
    }
    case ObjectiveKind::trig_vector: {
      Mat jac = Mat::Zero(m_, n_);
      for (int i = 0; i < m_; ++i) {
        const double sp = q_ > 0 ? s_phase_.row(i).dot(s) : 0.0;
        for (int j = 0; j < n_; ++j)
          jac(i, j) = amplitude_(i, j) * frequency_(i, j) *
                      std::cos(frequency_(i, j) * alpha(j) + phase_(i, j) + sp);
      }
      return jac;
    }
    case ObjectiveKind::table_of_quadratics: {
      const TableBlend blend = table_blend(s_nodes_, s(0));
      Mat jac(m_, n_);
      const Vec empty(0);
      for (int i = 0; i < m_; ++i) {
        const Vec g0 = quad_gradient(tables_[blend.k0][static_cast<size_t>(i)], empty, alpha);
        const Vec g1 = quad_gradient(tables_[blend.k1][static_cast<size_t>(i)], empty, alpha);
        jac.row(i) = ((1.0 - blend.w) * g0 + blend.w * g1).transpose();
      }
      return jac;
    }
  }
  throw std::logic_error("unreachable objective kind");
}

}  // namespace conedesc
