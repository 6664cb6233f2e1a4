#include "coco/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "coco/common.hpp"

namespace coco {

KernelKind kernel_kind_from_string(const std::string& s) {
  if (s == "cosine") return KernelKind::cosine;
  if (s == "gaussian") return KernelKind::gaussian;
  if (s == "laplace") return KernelKind::laplace;
  if (s == "imq") return KernelKind::imq;
  throw data_error("unknown kernel kind: " + s);
}

std::string to_string(KernelKind k) {
  switch (k) {
    case KernelKind::cosine: return "cosine";
    case KernelKind::gaussian: return "gaussian";
    case KernelKind::laplace: return "laplace";
    case KernelKind::imq: return "imq";
  }
  return "?";
}

namespace {

void require_rho(const KernelSpec& spec) {
  if (spec.kind != KernelKind::cosine && !(spec.rho > 0.0))
    throw data_error("kernel " + to_string(spec.kind) + " requires rho > 0");
}

double kernel_from_parts(const KernelSpec& spec, double dot, double nz, double nzp,
                         double dist2) {
  switch (spec.kind) {
    case KernelKind::cosine:
      if (nz == 0.0 || nzp == 0.0)
        throw data_error("cosine kernel undefined for zero vector");
      return dot / (nz * nzp);
    case KernelKind::gaussian:
      return std::exp(-dist2 / (2.0 * spec.rho));
    case KernelKind::laplace:
      return std::exp(-std::sqrt(std::max(dist2, 0.0)) / spec.rho);
    case KernelKind::imq:
      return 1.0 / std::sqrt(dist2 + spec.rho);
  }
  return 0.0;
}

}  // namespace

double eval_kernel(const KernelSpec& spec, const Eigen::VectorXd& z,
                   const Eigen::VectorXd& zp) {
  if (z.size() != zp.size()) throw data_error("eval_kernel: dimension mismatch");
  require_rho(spec);
  const double dot = z.dot(zp);
  const double dist2 = (z - zp).squaredNorm();
  return kernel_from_parts(spec, dot, z.norm(), zp.norm(), dist2);
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& A,
                              const Eigen::MatrixXd& B) {
  if (A.cols() != B.cols()) throw data_error("kernel_matrix: dimension mismatch");
  require_rho(spec);
  const Eigen::MatrixXd dots = A * B.transpose();
  const Eigen::VectorXd a2 = A.rowwise().squaredNorm();
  const Eigen::VectorXd b2 = B.rowwise().squaredNorm();
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j) {
      const double dist2 = std::max(a2[i] + b2[j] - 2.0 * dots(i, j), 0.0);
      K(i, j) = kernel_from_parts(spec, dots(i, j), std::sqrt(a2[i]),
                                  std::sqrt(b2[j]), dist2);
    }
  return K;
}

Eigen::VectorXd kernel_diag(const KernelSpec& spec, const Eigen::MatrixXd& A) {
  require_rho(spec);
  Eigen::VectorXd d(A.rows());
  switch (spec.kind) {
    case KernelKind::cosine:
      for (Eigen::Index i = 0; i < A.rows(); ++i) {
        if (A.row(i).norm() == 0.0)
          throw data_error("cosine kernel undefined for zero vector");
        d[i] = 1.0;
      }
      break;
    case KernelKind::gaussian:
    case KernelKind::laplace:
      d.setOnes();
      break;
    case KernelKind::imq:
      d.setConstant(1.0 / std::sqrt(spec.rho));
      break;
  }
  return d;
}

double median_sq_dist(const Eigen::MatrixXd& Z, Eigen::Index max_rows) {
  if (Z.rows() < 2) throw data_error("median_sq_dist: need at least 2 rows");
  // Deterministic stride subsample; no RNG so refits are reproducible.
  const Eigen::Index n = Z.rows();
  const Eigen::Index take = std::min(n, max_rows);
  const double stride = static_cast<double>(n) / static_cast<double>(take);
  std::vector<Eigen::Index> idx(take);
  for (Eigen::Index i = 0; i < take; ++i)
    idx[i] = std::min<Eigen::Index>(static_cast<Eigen::Index>(i * stride), n - 1);
  std::vector<double> d2;
  d2.reserve(static_cast<std::size_t>(take) * (take - 1) / 2);
  for (Eigen::Index i = 0; i < take; ++i)
    for (Eigen::Index j = i + 1; j < take; ++j)
      d2.push_back((Z.row(idx[i]) - Z.row(idx[j])).squaredNorm());
  const std::size_t mid = d2.size() / 2;
  std::nth_element(d2.begin(), d2.begin() + mid, d2.end());
  return d2[mid];
}

double default_rho(KernelKind kind, const Eigen::MatrixXd& Z) {
  switch (kind) {
    case KernelKind::cosine: return 1.0;
    case KernelKind::gaussian: return median_sq_dist(Z);
    case KernelKind::laplace: return std::sqrt(median_sq_dist(Z));
    case KernelKind::imq: return median_sq_dist(Z);
  }
  return 1.0;
}

}  // namespace coco
