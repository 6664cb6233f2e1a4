#include "coco/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "coco/common.hpp"

namespace coco {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

bool is_missing(const std::string& s) { return s.empty() || s == "."; }

double parse_number(const std::string& s, const std::string& what, std::size_t line_no) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw data_error("line " + std::to_string(line_no) + ": non-numeric " + what +
                     " value '" + s + "'");
  return value;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

Eigen::MatrixXd Panel::stacked_covariates(std::size_t begin, std::size_t end) const {
  Eigen::Index total = 0;
  for (std::size_t t = begin; t < end; ++t) total += periods[t].n();
  Eigen::MatrixXd Z(total, covariate_dim());
  Eigen::Index row = 0;
  for (std::size_t t = begin; t < end; ++t) {
    Z.middleRows(row, periods[t].n()) = periods[t].covariates;
    row += periods[t].n();
  }
  return Z;
}

Panel load_panel(const std::string& path, const LoadSchema& schema) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open panel file: " + path);

  std::string line;
  std::size_t line_no = 0;
  // Leading comment lines (config hash headers etc.) are skipped.
  do {
    if (!std::getline(in, line)) throw data_error(path + ": empty file");
    ++line_no;
  } while (!line.empty() && line[0] == '#');

  const std::vector<std::string> header = split_csv_line(line);
  auto col_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw data_error(path + ": missing required column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t date_col = col_of(schema.date_col);
  const std::size_t id_col = col_of(schema.id_col);
  const std::size_t ret_col = col_of(schema.ret_col);

  std::vector<std::size_t> cov_cols;
  std::vector<std::string> cov_names;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j == date_col || j == id_col || j == ret_col) continue;
    cov_cols.push_back(j);
    cov_names.push_back(header[j]);
  }

  struct Row {
    std::string id;
    double ret;
    std::vector<double> cov;
  };
  std::map<std::string, std::vector<Row>> by_date;  // sorted (ISO lexicographic)
  std::set<std::pair<std::string, std::string>> seen;

  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw data_error(path + ": line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " cells, found " +
                       std::to_string(cells.size()));
    Row row;
    const std::string& date = cells[date_col];
    row.id = cells[id_col];
    if (date.empty() || row.id.empty())
      throw data_error(path + ": line " + std::to_string(line_no) +
                       ": empty date or asset_id");
    if (!seen.emplace(date, row.id).second)
      throw data_error(path + ": line " + std::to_string(line_no) + ": duplicate (" +
                       date + ", " + row.id + ")");
    if (is_missing(cells[ret_col]))
      throw data_error(path + ": line " + std::to_string(line_no) + ": missing ret");
    row.ret = parse_number(cells[ret_col], schema.ret_col, line_no);
    row.cov.resize(cov_cols.size());
    for (std::size_t k = 0; k < cov_cols.size(); ++k)
      row.cov[k] = is_missing(cells[cov_cols[k]])
                       ? std::numeric_limits<double>::quiet_NaN()
                       : parse_number(cells[cov_cols[k]], cov_names[k], line_no);
    if (!std::isfinite(row.ret))
      throw data_error(path + ": line " + std::to_string(line_no) + ": non-finite ret");
    by_date[date].push_back(std::move(row));
    ++data_rows;
  }
  if (data_rows == 0) throw data_error(path + ": no data rows");

  Panel panel;
  panel.covariate_names = cov_names;
  panel.meta.source_path = path;
  panel.meta.log.push_back("loaded " + std::to_string(data_rows) + " rows, " +
                           std::to_string(by_date.size()) + " periods");
  for (auto& [date, rows] : by_date) {
    PeriodRecord p;
    p.date = date;
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    p.returns.resize(n);
    p.covariates.resize(n, static_cast<Eigen::Index>(cov_names.size()));
    p.asset_ids.reserve(rows.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      p.asset_ids.push_back(rows[i].id);
      p.returns[i] = rows[i].ret;
      for (std::size_t k = 0; k < cov_names.size(); ++k)
        p.covariates(i, static_cast<Eigen::Index>(k)) = rows[i].cov[k];
    }
    panel.periods.push_back(std::move(p));
  }
  return panel;
}

void save_panel(const Panel& panel, const std::string& path, const LoadSchema& schema) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write panel file: " + path);
  out << schema.date_col << ',' << schema.id_col << ',' << schema.ret_col;
  for (const auto& name : panel.covariate_names) out << ',' << name;
  out << '\n';
  for (const auto& p : panel.periods) {
    for (Eigen::Index i = 0; i < p.n(); ++i) {
      out << p.date << ',' << p.asset_ids[static_cast<std::size_t>(i)] << ','
          << format_number(p.returns[i]);
      for (Eigen::Index j = 0; j < p.covariates.cols(); ++j) {
        out << ',';
        if (std::isnan(p.covariates(i, j)))
          out << "";  // missing cell
        else
          out << format_number(p.covariates(i, j));
      }
      out << '\n';
    }
  }
}

namespace {

// Average ranks mapped affinely to [-1, 1]; ties share their mean rank.
void rank_transform_column(Eigen::MatrixXd& cov, Eigen::Index col) {
  std::vector<Eigen::Index> obs;
  for (Eigen::Index i = 0; i < cov.rows(); ++i)
    if (!std::isnan(cov(i, col))) obs.push_back(i);
  const std::size_t n = obs.size();
  if (n <= 1) {
    for (Eigen::Index i : obs) cov(i, col) = 0.0;
    return;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cov(obs[a], col) < cov(obs[b], col);
  });
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && cov(obs[order[j + 1]], col) == cov(obs[order[i]], col)) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based mean rank
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    cov(obs[k], col) = 2.0 * (rank[k] - 1.0) / static_cast<double>(n - 1) - 1.0;
}

double observed_median(const Eigen::MatrixXd& cov, Eigen::Index col) {
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < cov.rows(); ++i)
    if (!std::isnan(cov(i, col))) vals.push_back(cov(i, col));
  if (vals.empty()) return 0.0;
  const std::size_t mid = vals.size() / 2;
  std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
  double med = vals[mid];
  if (vals.size() % 2 == 0) {
    const double lo = *std::max_element(vals.begin(), vals.begin() + mid);
    med = 0.5 * (med + lo);
  }
  return med;
}

}  // namespace

Panel preprocess(const Panel& panel, const PreprocessOptions& opts) {
  if (panel.periods.empty()) throw data_error("preprocess: empty panel");
  Panel out;
  out.covariate_names = panel.covariate_names;
  out.meta = panel.meta;

  std::size_t dropped = 0;
  for (const auto& src : panel.periods) {
    const Eigen::Index cells = src.covariates.size();
    double observed = 0.0;
    if (cells > 0) {
      Eigen::Index obs = 0;
      for (Eigen::Index i = 0; i < src.covariates.rows(); ++i)
        for (Eigen::Index j = 0; j < src.covariates.cols(); ++j)
          if (!std::isnan(src.covariates(i, j))) ++obs;
      observed = static_cast<double>(obs) / static_cast<double>(cells);
    } else {
      observed = 1.0;
    }
    if (observed < opts.min_observed) {
      ++dropped;
      continue;
    }
    PeriodRecord p = src;
    if (opts.rank_transform)
      for (Eigen::Index j = 0; j < p.covariates.cols(); ++j)
        rank_transform_column(p.covariates, j);
    for (Eigen::Index j = 0; j < p.covariates.cols(); ++j) {
      const double med = observed_median(p.covariates, j);
      for (Eigen::Index i = 0; i < p.covariates.rows(); ++i)
        if (std::isnan(p.covariates(i, j))) p.covariates(i, j) = med;
    }
    out.periods.push_back(std::move(p));
  }
  if (out.periods.empty())
    throw data_error("preprocess: all periods dropped (min_observed = " +
                     std::to_string(opts.min_observed) + ")");
  out.meta.log.push_back("preprocess: min_observed=" + std::to_string(opts.min_observed) +
                         " rank_transform=" + (opts.rank_transform ? "on" : "off") +
                         " dropped=" + std::to_string(dropped) + " imputed=median");
  return out;
}

DataPoint cross_section(const Panel& panel, std::size_t t) {
  if (t >= panel.periods.size())
    throw data_error("cross_section: period index " + std::to_string(t) +
                     " out of range (have " + std::to_string(panel.periods.size()) + ")");
  const PeriodRecord& p = panel.periods[t];
  DataPoint xi;
  xi.n = static_cast<int>(p.n());
  xi.returns = p.returns;
  xi.covariates = p.covariates;
  xi.weight = 1.0 / static_cast<double>(xi.n);
  if (!xi.returns.allFinite() || !xi.covariates.allFinite())
    throw data_error("cross_section: period " + p.date +
                     " has non-finite entries; run preprocess first");
  return xi;
}

}  // namespace coco
