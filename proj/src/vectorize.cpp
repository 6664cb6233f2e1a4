#include "coco/vectorize.hpp"

#include "coco/common.hpp"

namespace coco {

namespace {

void require_symmetric(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw data_error("vech: matrix is not square");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) throw data_error("vech: matrix asymmetric beyond 1e-12");
}

}  // namespace

Eigen::VectorXd vech_of(const Eigen::MatrixXd& A) {
  require_symmetric(A);
  const Eigen::Index n = A.rows();
  Eigen::VectorXd v(vech_size(n));
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) v[k++] = A(i, j);
  return v;
}

Eigen::VectorXd vec_of(const Eigen::MatrixXd& A) {
  return Eigen::Map<const Eigen::VectorXd>(A.data(), A.size());
}

Eigen::MatrixXd unvech(const Eigen::VectorXd& v, Eigen::Index n) {
  if (v.size() != vech_size(n)) throw data_error("unvech: length does not match n(n+1)/2");
  Eigen::MatrixXd A(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) {
      A(i, j) = v[k];
      A(j, i) = v[k];
      ++k;
    }
  return A;
}

Eigen::MatrixXd duplication(Eigen::Index n) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n * n, vech_size(n));
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) {
      D(j * n + i, k) = 1.0;
      D(i * n + j, k) = 1.0;
      ++k;
    }
  return D;
}

Eigen::MatrixXd diag_selector(Eigen::Index n) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n * n, n);
  for (Eigen::Index i = 0; i < n; ++i) R(i * n + i, i) = 1.0;
  return R;
}

}  // namespace coco
