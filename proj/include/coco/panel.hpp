#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace coco {

// One cross section: date label, asset identifiers, realized returns over the
// following period, and covariate rows observed at the start. Missing
// covariate cells are NaN until preprocess imputes them.
struct PeriodRecord {
  std::string date;
  std::vector<std::string> asset_ids;
  Eigen::VectorXd returns;     // length n
  Eigen::MatrixXd covariates;  // n x d
  Eigen::Index n() const { return returns.size(); }
};

struct PanelMeta {
  std::string source_path;
  std::vector<std::string> log;
};

struct Panel {
  std::vector<PeriodRecord> periods;
  std::vector<std::string> covariate_names;
  PanelMeta meta;

  std::size_t num_periods() const { return periods.size(); }
  Eigen::Index covariate_dim() const {
    return static_cast<Eigen::Index>(covariate_names.size());
  }
  // Covariate rows of periods [begin, end) stacked top to bottom.
  Eigen::MatrixXd stacked_covariates(std::size_t begin, std::size_t end) const;
};

struct LoadSchema {
  std::string date_col = "date";
  std::string id_col = "asset_id";
  std::string ret_col = "ret";
};

// Long CSV (UTF-8, header required): date, asset_id, ret plus numeric
// covariate columns. Empty cell or "." means missing. Periods are grouped by
// date and sorted lexicographically (ISO date labels).
Panel load_panel(const std::string& path, const LoadSchema& schema = {});

// Inverse of load_panel; numeric cells use shortest round-trip formatting so a
// reload reproduces values bit for bit.
void save_panel(const Panel& panel, const std::string& path,
                const LoadSchema& schema = {});

struct PreprocessOptions {
  double min_observed = 0.30;  // drop periods with fewer observed covariate cells
  bool rank_transform = false; // per-period cross-sectional ranks mapped to [-1, 1]
};

Panel preprocess(const Panel& panel, const PreprocessOptions& opts = {});

// One data point: cross-section size, returns, covariates and the size weight.
struct DataPoint {
  int n = 0;
  Eigen::VectorXd returns;
  Eigen::MatrixXd covariates;
  double weight = 0.0;  // 1/n under the default scheme
};

DataPoint cross_section(const Panel& panel, std::size_t t);

}  // namespace coco
