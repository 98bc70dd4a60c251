#pragma once

#include <string>
#include <vector>

#include "conedesc/types.hpp"

namespace conedesc {

enum class ObjectiveKind { affine, quadratic_vector, trig_vector, table_of_quadratics };

ObjectiveKind objective_kind_from_string(const std::string& s);
std::string to_string(ObjectiveKind k);

/// One component F_i(s, alpha) = 0.5 (alpha - center - s_shift*s)' quad (...)
/// + offset. quad must be symmetric.
struct QuadraticComponent {
  Mat quad;     // n x n, symmetric
  Vec center;   // n
  Mat s_shift;  // n x q (q may be 0)
  double offset = 0.0;
};

/// Family s -> F_s : R^n -> R^m with closed-form Jacobians, continuous in s
/// by construction.
///   affine               F = (M + sum_k s_k M_k) alpha + b
///   quadratic_vector     per-component shifted quadratics
///   trig_vector          F_i = sum_j A_ij sin(W_ij alpha_j + P_ij + <p_i, s>)
///   table_of_quadratics  piecewise-linear blend in scalar s of quadratic
///                        tables at increasing nodes
class ObjectiveFamily {
 public:
  static ObjectiveFamily affine(Mat matrix, Vec offset,
                                std::vector<Mat> s_matrices = {});
  static ObjectiveFamily quadratic(std::vector<QuadraticComponent> components,
                                   int n, int q);
  static ObjectiveFamily trig(Mat amplitude, Mat frequency, Mat phase,
                              Mat s_phase);
  static ObjectiveFamily quadratic_table(
      std::vector<double> s_nodes,
      std::vector<std::vector<QuadraticComponent>> tables, int n);

  Vec value(const Vec& s, const Vec& alpha) const;
  Mat jacobian(const Vec& s, const Vec& alpha) const;

  int decision_dim() const { return n_; }
  int value_dim() const { return m_; }
  int param_dim() const { return q_; }
  ObjectiveKind kind() const { return kind_; }

  // Coefficients, exposed for serialization.
  const Mat& matrix() const { return matrix_; }
  const Vec& offset() const { return offset_; }
  const std::vector<Mat>& s_matrices() const { return s_matrices_; }
  const std::vector<QuadraticComponent>& components() const {
    return tables_[0];
  }
  const std::vector<std::vector<QuadraticComponent>>& tables() const {
    return tables_;
  }
  const std::vector<double>& s_nodes() const { return s_nodes_; }
  const Mat& amplitude() const { return amplitude_; }
  const Mat& frequency() const { return frequency_; }
  const Mat& phase() const { return phase_; }
  const Mat& s_phase() const { return s_phase_; }

 private:
  explicit ObjectiveFamily(ObjectiveKind kind) : kind_(kind) {}

  ObjectiveKind kind_;
  int n_ = 0, m_ = 0, q_ = 0;
  Mat matrix_;
  Vec offset_;
  std::vector<Mat> s_matrices_;
  std::vector<std::vector<QuadraticComponent>> tables_;
  std::vector<double> s_nodes_;
  Mat amplitude_, frequency_, phase_, s_phase_;
};

}  // namespace conedesc
