#pragma once

#include <Eigen/Dense>
#include <string>

namespace coco {

enum class KernelKind { cosine, gaussian, laplace, imq };

KernelKind kernel_kind_from_string(const std::string& s);
std::string to_string(KernelKind k);

// Scalar kernel on covariate rows. rho is the length scale; the cosine kernel
// ignores it.
struct KernelSpec {
  KernelKind kind = KernelKind::cosine;
  double rho = 1.0;
};

double eval_kernel(const KernelSpec& spec, const Eigen::VectorXd& z,
                   const Eigen::VectorXd& zp);

// k(A_i, B_j) for row sets A (n x d) and B (p x d).
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& A,
                              const Eigen::MatrixXd& B);

// Diagonal k(A_i, A_i) without forming the full matrix.
Eigen::VectorXd kernel_diag(const KernelSpec& spec, const Eigen::MatrixXd& A);

// Median of pairwise squared distances over a deterministic subsample of at
// most max_rows rows. Default Gaussian length scale.
double median_sq_dist(const Eigen::MatrixXd& Z, Eigen::Index max_rows = 1000);

// Length-scale default per kernel family: gaussian -> median squared distance,
// laplace -> its square root, imq -> median squared distance. Cosine keeps 1.
double default_rho(KernelKind kind, const Eigen::MatrixXd& Z);

}  // namespace coco
