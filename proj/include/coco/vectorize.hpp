#pragma once

#include <Eigen/Dense>

namespace coco {

// Column-major half-vectorization of a symmetric matrix:
// [A11, A21, ..., An1, A22, A32, ..., Ann]. Throws if A is asymmetric beyond
// 1e-12 (absolute, relative to max |entry|).
Eigen::VectorXd vech_of(const Eigen::MatrixXd& A);

// Column-major full vectorization.
Eigen::VectorXd vec_of(const Eigen::MatrixXd& A);

// Inverse of vech_of: rebuilds the symmetric n x n matrix.
Eigen::MatrixXd unvech(const Eigen::VectorXd& v, Eigen::Index n);

// Duplication matrix D_n (n^2 x n(n+1)/2): vec(A) = D_n * vech(A) for
// symmetric A.
Eigen::MatrixXd duplication(Eigen::Index n);

// Selector R_n (n^2 x n): vec(diag(v)) = R_n * v; column i is the standard
// basis vector e_{(i-1)n+i}.
Eigen::MatrixXd diag_selector(Eigen::Index n);

inline Eigen::Index vech_size(Eigen::Index n) { return n * (n + 1) / 2; }

}  // namespace coco
