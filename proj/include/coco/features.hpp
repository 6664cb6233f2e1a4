#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "coco/json_util.hpp"
#include "coco/kernels.hpp"

namespace coco {

struct PivotedCholeskyResult {
  std::vector<Eigen::Index> pivots;
  Eigen::MatrixXd factor;  // n x m, K ~ factor * factor^T
  double trace_error;      // residual trace after the last accepted pivot
};

using ColumnFn = std::function<Eigen::VectorXd(Eigen::Index)>;

// Greedy pivoted Cholesky of a PSD matrix given its diagonal and a column
// oracle. Picks the largest residual diagonal (ties -> lowest index), stops at
// m_max pivots or once the residual trace drops to tol. The residual diagonal
// is clamped at zero; entries below -1e-8 * tr(K) indicate a non-PSD input and
// raise numeric_error.
PivotedCholeskyResult pivoted_cholesky(const Eigen::VectorXd& diag,
                                       const ColumnFn& column, Eigen::Index m_max,
                                       double tol);

enum class MixingMode { orthonormal, identity };

enum class FeatureKind { nystrom, constant };

// Finite-dimensional feature map phi(z) = k(z, pivots^T) * mixing, or the
// constant map phi(z) = [1].
class FeatureMap {
 public:
  FeatureKind kind = FeatureKind::nystrom;
  KernelSpec kernel;
  Eigen::MatrixXd pivots;  // m x d covariate rows (empty for constant)
  Eigen::MatrixXd mixing;  // m x m
  double trace_error = 0.0;
  Eigen::MatrixXd gram;    // m x m RKHS Gram of the features

  Eigen::Index rank() const { return mixing.cols(); }

  // Feature rows for a block of covariates (n x d) -> (n x m).
  Eigen::MatrixXd evaluate(const Eigen::MatrixXd& Z) const;
  Eigen::RowVectorXd evaluate_one(const Eigen::VectorXd& z) const;

  Json to_json() const;
  static FeatureMap from_json(const Json& j);
};

// Nystrom feature map from the covariate sample Z. Orthonormal mixing solves
// B B^T = k(Z_pivots, Z_pivots)^-1 via the inverse transposed Cholesky factor
// (jitter 1e-10 * tr/m on factorization failure), so the Gram is the identity.
// Reaching fewer than m_max pivots is not an error; the achieved rank is kept.
FeatureMap build_feature_map(const KernelSpec& spec, const Eigen::MatrixXd& Z,
                             Eigen::Index m_max, double tol,
                             MixingMode mode = MixingMode::orthonormal);

// The one-dimensional constant map of the scalar idiosyncratic specification.
FeatureMap constant_id_feature();

}  // namespace coco
