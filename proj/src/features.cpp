#include "coco/features.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "coco/common.hpp"

namespace coco {

PivotedCholeskyResult pivoted_cholesky(const Eigen::VectorXd& diag,
                                       const ColumnFn& column, Eigen::Index m_max,
                                       double tol) {
  const Eigen::Index n = diag.size();
  if (m_max > n) throw data_error("pivoted_cholesky: m_max exceeds matrix size");
  const double trace0 = diag.sum();
  const double neg_tol = 1e-8 * std::max(trace0, 1.0);

  Eigen::VectorXd resid = diag;
  Eigen::MatrixXd L(n, m_max);
  std::vector<Eigen::Index> pivots;
  pivots.reserve(static_cast<std::size_t>(m_max));

  auto clamp_resid = [&] {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (resid[i] < -neg_tol)
        throw numeric_error("pivoted_cholesky: residual diagonal " +
                            std::to_string(resid[i]) +
                            " below tolerance; kernel not PSD");
      if (resid[i] < 0.0) resid[i] = 0.0;
    }
  };
  clamp_resid();

  Eigen::Index m = 0;
  while (m < m_max) {
    if (resid.sum() <= tol) break;
    Eigen::Index p = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (resid[i] > resid[p]) p = i;  // ties keep the lowest index
    if (resid[p] <= 0.0) break;

    Eigen::VectorXd col = column(p);
    if (col.size() != n) throw data_error("pivoted_cholesky: column oracle size mismatch");
    if (m > 0) col.noalias() -= L.leftCols(m) * L.row(p).head(m).transpose();
    const double root = std::sqrt(resid[p]);
    L.col(m) = col / root;
    L(p, m) = root;  // exact, avoids roundoff on the pivot row
    resid.noalias() -= L.col(m).cwiseProduct(L.col(m));
    resid[p] = 0.0;
    clamp_resid();
    pivots.push_back(p);
    ++m;
  }

  PivotedCholeskyResult out;
  out.pivots = std::move(pivots);
  out.factor = L.leftCols(m);
  out.trace_error = std::max(resid.sum(), 0.0);
  return out;
}

Eigen::MatrixXd FeatureMap::evaluate(const Eigen::MatrixXd& Z) const {
  if (kind == FeatureKind::constant) return Eigen::MatrixXd::Ones(Z.rows(), 1);
  Eigen::MatrixXd K = kernel_matrix(kernel, Z, pivots);
  if (!K.allFinite()) throw numeric_error("feature map: non-finite kernel values");
  return K * mixing;
}

Eigen::RowVectorXd FeatureMap::evaluate_one(const Eigen::VectorXd& z) const {
  if (kind == FeatureKind::constant) return Eigen::RowVectorXd::Ones(1);
  return evaluate(z.transpose()).row(0);
}

Json FeatureMap::to_json() const {
  Json j;
  j["kind"] = kind == FeatureKind::constant ? "constant" : "nystrom";
  j["kernel"] = {{"kind", to_string(kernel.kind)}, {"rho", kernel.rho}};
  j["rank"] = rank();
  j["trace_error"] = trace_error;
  j["pivots"] = coco::to_json(pivots);
  j["mixing"] = coco::to_json(mixing);
  j["gram"] = coco::to_json(gram);
  return j;
}

FeatureMap FeatureMap::from_json(const Json& j) {
  FeatureMap fm;
  fm.kind = j.at("kind").get<std::string>() == "constant" ? FeatureKind::constant
                                                          : FeatureKind::nystrom;
  fm.kernel.kind = kernel_kind_from_string(j.at("kernel").at("kind").get<std::string>());
  fm.kernel.rho = j.at("kernel").at("rho").get<double>();
  fm.trace_error = j.at("trace_error").get<double>();
  fm.pivots = matrix_from_json(j.at("pivots"));
  fm.mixing = matrix_from_json(j.at("mixing"));
  fm.gram = matrix_from_json(j.at("gram"));
  return fm;
}

FeatureMap build_feature_map(const KernelSpec& spec, const Eigen::MatrixXd& Z,
                             Eigen::Index m_max, double tol, MixingMode mode) {
  if (Z.rows() == 0) throw data_error("build_feature_map: empty covariate sample");
  const Eigen::VectorXd diag = kernel_diag(spec, Z);
  auto column = [&](Eigen::Index j) {
    return kernel_matrix(spec, Z, Z.row(j)).col(0);
  };
  PivotedCholeskyResult pc =
      pivoted_cholesky(diag, column, std::min(m_max, Z.rows()), tol);
  const Eigen::Index m = static_cast<Eigen::Index>(pc.pivots.size());
  if (m == 0) throw numeric_error("build_feature_map: kernel matrix is numerically zero");

  FeatureMap fm;
  fm.kind = FeatureKind::nystrom;
  fm.kernel = spec;
  fm.trace_error = pc.trace_error;
  fm.pivots.resize(m, Z.cols());
  for (Eigen::Index i = 0; i < m; ++i) fm.pivots.row(i) = Z.row(pc.pivots[i]);

  Eigen::MatrixXd Kpp = kernel_matrix(spec, fm.pivots, fm.pivots);
  if (mode == MixingMode::identity) {
    fm.mixing = Eigen::MatrixXd::Identity(m, m);
    fm.gram = Kpp;
    return fm;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(Kpp);
  if (llt.info() != Eigen::Success) {
    const double jitter = 1e-10 * Kpp.trace() / static_cast<double>(m);
    llt.compute(Kpp + jitter * Eigen::MatrixXd::Identity(m, m));
    if (llt.info() != Eigen::Success)
      throw numeric_error("build_feature_map: pivot block singular after jitter");
  }
  // B = L^-T, so B B^T = (L L^T)^-1 = Kpp^-1 and the Gram is the identity.
  fm.mixing = llt.matrixL()
                  .transpose()
                  .solve(Eigen::MatrixXd::Identity(m, m));
  fm.gram = fm.mixing.transpose() * Kpp * fm.mixing;
  return fm;
}

FeatureMap constant_id_feature() {
  FeatureMap fm;
  fm.kind = FeatureKind::constant;
  fm.mixing = Eigen::MatrixXd::Identity(1, 1);
  fm.gram = Eigen::MatrixXd::Identity(1, 1);
  fm.trace_error = 0.0;
  return fm;
}

}  // namespace coco
