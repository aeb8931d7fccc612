#include "discrepal/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "discrepal/errors.hpp"

namespace discrepal {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool is_binary(double v) { return v == 1.0 || v == -1.0; }

}  // namespace

Dataset Dataset::rows(const IndexList& indices) const {
  Dataset out;
  out.features = features(indices, Eigen::all);
  out.labels = labels(indices);
  out.name = name;
  return out;
}

void validate(const Dataset& data, LabelMode mode) {
  if (data.size() < 2) throw UsageError("dataset needs at least 2 rows, got " + std::to_string(data.size()));
  if (data.dim() < 1) throw UsageError("dataset needs at least 1 feature column");
  if (static_cast<std::size_t>(data.labels.size()) != data.size())
    throw DimensionError("label count does not match row count");
  if (!data.features.allFinite()) throw UsageError("dataset contains non-finite feature values");
  if (!data.labels.allFinite()) throw UsageError("dataset contains non-finite labels");
  if (mode == LabelMode::agnostic) {
    for (Eigen::Index i = 0; i < data.labels.size(); ++i) {
      if (!is_binary(data.labels[i]))
        throw UsageError("non-binary label " + std::to_string(data.labels[i]) + " at row " + std::to_string(i));
    }
  }
}

Dataset load_csv(const std::filesystem::path& path, std::string_view label_column, LabelMode mode) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file, expected a header row");
  const auto header = split_fields(line);
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end())
    throw ParseError(path.string() + ": label column '" + std::string(label_column) + "' not found in header");
  const auto label_pos = static_cast<std::size_t>(label_it - header.begin());
  const std::vector<std::string> names(header.begin(), header.end());

  std::vector<double> feature_values;
  std::vector<double> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != names.size())
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(names.size()) +
                       " fields, found " + std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double v = 0.0;
      if (!parse_double(fields[c], v) || !std::isfinite(v))
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": non-numeric value '" +
                         std::string(fields[c]) + "' in column '" + names[c] + "'");
      if (c == label_pos) {
        if (mode == LabelMode::agnostic && !is_binary(v))
          throw ParseError(path.string() + ":" + std::to_string(line_no) + ": non-binary label '" +
                           std::string(fields[c]) + "' in column '" + names[c] + "'");
        labels.push_back(v);
      } else {
        feature_values.push_back(v);
      }
    }
  }

  const auto n = labels.size();
  const auto d = names.size() - 1;
  if (n < 2) throw ParseError(path.string() + ": need at least 2 data rows, found " + std::to_string(n));
  if (d < 1) throw ParseError(path.string() + ": no feature columns besides '" + std::string(label_column) + "'");

  Dataset out;
  out.features = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      feature_values.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  out.labels = Eigen::Map<const Eigen::VectorXd>(labels.data(), static_cast<Eigen::Index>(n));
  out.name = path.stem().string();
  return out;
}

Dataset standardize(const Dataset& data) {
  Dataset out = data;
  const auto n = static_cast<double>(data.size());
  for (Eigen::Index c = 0; c < data.features.cols(); ++c) {
    auto col = out.features.col(c);
    const double mean = col.mean();
    col.array() -= mean;
    const double sd = std::sqrt(col.squaredNorm() / n);
    // Guard: a column that is constant up to roundoff carries no information.
    if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) {
      col.setZero();
    } else {
      col /= sd;
    }
  }
  return out;
}

Dataset subsample(const Dataset& data, std::size_t max_n, std::uint64_t seed) {
  if (max_n < 2) throw UsageError("subsample: max_n must be at least 2");
  if (data.size() <= max_n) return data;
  IndexList order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(max_n);
  std::sort(order.begin(), order.end());
  return data.rows(order);
}

SplitIndices split(const Dataset& data, double train_frac, std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0))
    throw ConfigError("train_frac must lie in (0, 1), got " + std::to_string(train_frac));
  const auto n = data.size();
  if (n < 3) throw UsageError("split: need at least 3 rows, got " + std::to_string(n));
  const auto n_train = static_cast<std::size_t>(std::llround(train_frac * static_cast<double>(n)));

  IndexList order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  SplitIndices out;
  out.seed = seed;
  out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

}  // namespace discrepal
