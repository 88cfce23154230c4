#include "smoothspec/data_sim.hpp"

#include "smoothspec/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

namespace smoothspec {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

bool parse_double(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return res.ec == std::errc() && res.ptr == cell.data() + cell.size();
}

bool parse_label(std::string_view cell, int& out) {
  double v = 0.0;
  if (!parse_double(cell, v)) return false;
  if (!std::isfinite(v) || v < 0.0 || v != std::floor(v) || v > std::numeric_limits<int>::max()) {
    return false;
  }
  out = static_cast<int>(v);
  return true;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Dataset parse_csv(std::string_view text, const CsvOptions& opts) {
  std::vector<std::vector<double>> rows;
  LabelVector labels;
  std::size_t width = 0;
  std::size_t line_no = 0;
  bool header_pending = opts.skip_header;

  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }

    const auto cells = split_commas(line);
    if (width == 0) {
      width = cells.size();
      if (opts.label_column && width < 2) {
        throw ParseError("row " + std::to_string(line_no) + ": label column requested but only one column",
                         line_no, 0);
      }
    } else if (cells.size() != width) {
      throw ParseError("row " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                           " fields, found " + std::to_string(cells.size()),
                       line_no, 0);
    }

    const std::size_t n_features = opts.label_column ? width - 1 : width;
    std::vector<double> row(n_features);
    for (std::size_t c = 0; c < n_features; ++c) {
      if (!parse_double(cells[c], row[c]) || !std::isfinite(row[c])) {
        throw ParseError("row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                             ": not a finite number: '" + std::string(cells[c]) + "'",
                         line_no, c + 1);
      }
    }
    if (opts.label_column) {
      int label = 0;
      if (!parse_label(cells.back(), label)) {
        throw ParseError("row " + std::to_string(line_no) + ", column " + std::to_string(width) +
                             ": label must be a non-negative integer: '" + std::string(cells.back()) + "'",
                         line_no, width);
      }
      labels.push_back(label);
    }
    rows.push_back(std::move(row));
  }

  Dataset ds;
  const std::size_t d = rows.empty() ? 0 : rows.front().size();
  ds.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
    }
  }
  if (opts.label_column) ds.labels = std::move(labels);
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& opts) {
  return parse_csv(read_file(path), opts);
}

LabelVector load_labels(const std::filesystem::path& path, bool skip_header) {
  const std::string text = read_file(path);
  LabelVector labels;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = skip_header;
  while (std::getline(in, line)) {
    ++line_no;
    const auto cell = trim(line);
    if (cell.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    int label = 0;
    if (!parse_label(cell, label)) {
      throw ParseError("row " + std::to_string(line_no) + ": label must be a non-negative integer", line_no, 1);
    }
    labels.push_back(label);
  }
  return labels;
}

void validate_features(const FeatureMatrix& x) {
  if (x.rows() < 2) throw ConfigError("feature matrix needs at least 2 rows, got " + std::to_string(x.rows()));
  if (x.cols() < 1) throw ConfigError("feature matrix needs at least 1 column");
  if (!x.allFinite()) throw ConfigError("feature matrix contains NaN or Inf");
}

Matrix pairwise_sq_distances(const FeatureMatrix& x) {
  const Eigen::Index n = x.rows();
  Matrix d2 = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (x.row(i) - x.row(j)).squaredNorm();
      d2(i, j) = v;
      d2(j, i) = v;
    }
  }
  return d2;
}

SimilarityMatrix gaussian_similarity(const FeatureMatrix& x, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("gaussian sigma must be a positive finite number");
  }
  const Matrix d2 = pairwise_sq_distances(x);
  const double denom = 2.0 * sigma * sigma;
  const Eigen::Index n = x.rows();
  SimilarityMatrix s = SimilarityMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::exp(-d2(i, j) / denom);
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

Vector local_scales(const FeatureMatrix& x, int l) {
  const Eigen::Index n = x.rows();
  if (l < 1 || l > n - 1) {
    throw ConfigError("zp neighbour rank l must lie in [1, n-1] = [1, " + std::to_string(n - 1) + "], got " +
                      std::to_string(l));
  }
  const Matrix d2 = pairwise_sq_distances(x);

  double min_positive = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (d2(i, j) > 0.0) min_positive = std::min(min_positive, d2(i, j));
    }
  }
  const double fallback = std::isfinite(min_positive) ? std::sqrt(min_positive) : 1e-12;

  Vector sigma(n);
  std::vector<double> row;
  row.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    row.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) row.push_back(d2(i, j));
    }
    std::nth_element(row.begin(), row.begin() + (l - 1), row.end());
    const double s = std::sqrt(row[static_cast<std::size_t>(l - 1)]);
    sigma(i) = s > 0.0 ? s : fallback;
  }
  return sigma;
}

SimilarityMatrix zp_similarity(const FeatureMatrix& x, int l) {
  const Vector sigma = local_scales(x, l);
  const Matrix d2 = pairwise_sq_distances(x);
  const Eigen::Index n = x.rows();
  SimilarityMatrix s = SimilarityMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::exp(-d2(i, j) / (sigma(i) * sigma(j)));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

std::vector<ClusterSpec> cluster_specs_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("cluster spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("cluster spec must be a JSON array");

  std::vector<ClusterSpec> specs;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string where = "cluster spec " + std::to_string(i) + ": ";
    if (!item.is_object() || !item.contains("center") || !item.contains("spread") || !item.contains("count")) {
      throw ConfigError(where + "needs center, spread and count");
    }
    ClusterSpec spec;
    try {
      spec.center = item.at("center").get<std::vector<double>>();
      const auto& spread = item.at("spread");
      spec.spread = spread.is_array() ? spread.get<std::vector<double>>() : std::vector<double>{spread.get<double>()};
      spec.count = item.at("count").get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(where + e.what());
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

Dataset generate_multiscale(const std::vector<ClusterSpec>& specs, std::uint64_t seed) {
  if (specs.empty()) throw ConfigError("cluster spec list is empty");
  const std::size_t d = specs.front().center.size();
  if (d == 0) throw ConfigError("cluster center must have at least one coordinate");

  Eigen::Index total = 0;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const auto& spec = specs[s];
    const std::string where = "cluster spec " + std::to_string(s) + ": ";
    if (spec.center.size() != d) throw ConfigError(where + "center dimension differs from the first spec");
    if (spec.spread.size() != 1 && spec.spread.size() != d) {
      throw ConfigError(where + "spread must be a scalar or have one entry per axis");
    }
    for (double v : spec.spread) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(where + "spread must be finite and non-negative");
    }
    if (spec.count < 1) throw ConfigError(where + "count must be at least 1");
    total += spec.count;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset ds;
  ds.features.resize(total, static_cast<Eigen::Index>(d));
  ds.labels = LabelVector();
  ds.labels->reserve(static_cast<std::size_t>(total));

  Eigen::Index row = 0;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const auto& spec = specs[s];
    for (int k = 0; k < spec.count; ++k, ++row) {
      for (std::size_t a = 0; a < d; ++a) {
        const double spread = spec.spread.size() == 1 ? spec.spread[0] : spec.spread[a];
        ds.features(row, static_cast<Eigen::Index>(a)) = spec.center[a] + spread * normal(rng);
      }
      ds.labels->push_back(static_cast<int>(s));
    }
  }
  return ds;
}

}  // namespace smoothspec
