#include "discrepal/report.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "discrepal/errors.hpp"

namespace discrepal {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  return fmt::format("{}", value);
}

void write_curves_csv(const std::filesystem::path& path, const LearningCurveSet& curves) {
  auto out = open_output(path);
  out << "criterion,run,query,mse\n";
  for (std::size_t c = 0; c < curves.criteria.size(); ++c) {
    const auto name = to_string(curves.criteria[c]);
    const auto& m = curves.mse[c];
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index q = 0; q < m.cols(); ++q)
        out << name << ',' << r << ',' << q + 1 << ',' << format_number(m(r, q)) << '\n';
  }
  finish(out, path);
}

void write_summary_csv(const std::filesystem::path& path, const LearningCurveSet& curves) {
  const bool has_random = curves.contains(Criterion::random);
  const Eigen::VectorXd random_mean = has_random ? curves.mean(Criterion::random) : Eigen::VectorXd();
  auto out = open_output(path);
  out << "criterion,query,mean,stderr,mean_minus_random\n";
  for (auto c : curves.criteria) {
    const Eigen::VectorXd mean = curves.mean(c);
    const Eigen::VectorXd se = curves.standard_error(c);
    for (Eigen::Index q = 0; q < mean.size(); ++q) {
      out << to_string(c) << ',' << q + 1 << ',' << format_number(mean(q)) << ',' << format_number(se(q)) << ',';
      if (has_random) out << format_number(mean(q) - random_mean(q));
      out << '\n';
    }
  }
  finish(out, path);
}

void write_wtl_csv(const std::filesystem::path& path, const LearningCurveSet& curves, std::size_t stride,
                   double p_threshold, TTestKind kind) {
  auto out = open_output(path);
  out << "pair,query,p_value,verdict\n";
  for (std::size_t i = 0; i < curves.criteria.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.criteria.size(); ++j) {
      const auto pair = to_string(curves.criteria[i]) + "_vs_" + to_string(curves.criteria[j]);
      const auto wtl = compare(curves.mse[i], curves.mse[j], stride, p_threshold, kind);
      for (const auto& cp : wtl.checkpoints)
        out << pair << ',' << cp.query << ',' << format_number(cp.p_value) << ',' << to_string(cp.verdict) << '\n';
    }
  }
  finish(out, path);
}

void write_decomp_csv(std::ostream& out, const DecompositionCurve& curve) {
  out << "query";
  for (const auto& name : curve.bin_names) out << ',' << name;
  out << ",LQ,LP\n";
  for (Eigen::Index q = 0; q < curve.bins.rows(); ++q) {
    out << q + 1;
    for (Eigen::Index b = 0; b < curve.bins.cols(); ++b) out << ',' << format_number(curve.bins(q, b));
    out << ',' << format_number(curve.labeled_loss(q)) << ',' << format_number(curve.pool_loss(q)) << '\n';
  }
}

void write_decomp_csv(const std::filesystem::path& path, const DecompositionCurve& curve) {
  auto out = open_output(path);
  write_decomp_csv(out, curve);
  finish(out, path);
}

void write_tune_csv(const std::filesystem::path& path, const TuneResult& result) {
  auto out = open_output(path);
  out << "sigma,log10_lambda,mean_mse\n";
  for (std::size_t i = 0; i < result.sigma_grid.size(); ++i)
    for (std::size_t j = 0; j < result.lambda_grid.size(); ++j)
      out << format_number(result.sigma_grid[i]) << ',' << format_number(std::log10(result.lambda_grid[j])) << ','
          << format_number(result.mean_mse(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) << '\n';
  finish(out, path);
}

LearningCurveSet read_curves_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "criterion,run,query,mse")
    throw ParseError(path.string() + ":1: expected header 'criterion,run,query,mse'");

  struct Cell {
    std::size_t run, query;
    double mse;
  };
  std::vector<Criterion> order;
  std::map<Criterion, std::vector<Cell>> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 4) throw ParseError(where + ": expected 4 fields");
    Criterion c;
    try {
      c = parse_criterion(fields[0]);
    } catch (const Error&) {
      throw ParseError(where + ": unknown criterion '" + fields[0] + "'");
    }
    Cell cell{};
    auto parse_int = [&](const std::string& s, std::size_t& v) {
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(where + ": bad integer '" + s + "'");
    };
    parse_int(fields[1], cell.run);
    parse_int(fields[2], cell.query);
    const auto [p, ec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), cell.mse);
    if (fields[3].empty() || ec != std::errc{} || p != fields[3].data() + fields[3].size())
      throw ParseError(where + ": bad number '" + fields[3] + "'");
    if (cell.query == 0) throw ParseError(where + ": query numbers start at 1");
    if (!cells.count(c)) order.push_back(c);
    cells[c].push_back(cell);
  }
  if (order.empty()) throw ParseError(path.string() + ": no data rows");

  LearningCurveSet set;
  for (auto c : order) {
    std::size_t runs = 0, budget = 0;
    for (const auto& cell : cells[c]) {
      runs = std::max(runs, cell.run + 1);
      budget = std::max(budget, cell.query);
    }
    if (runs * budget != cells[c].size())
      throw ParseError(path.string() + ": criterion '" + to_string(c) + "' does not form a full runs x queries grid");
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(runs), static_cast<Eigen::Index>(budget),
                                                  std::nan(""));
    for (const auto& cell : cells[c]) {
      auto& slot = m(static_cast<Eigen::Index>(cell.run), static_cast<Eigen::Index>(cell.query - 1));
      if (!std::isnan(slot))
        throw ParseError(path.string() + ": duplicate row for " + to_string(c) + " run " + std::to_string(cell.run));
      slot = cell.mse;
    }
    if (!set.mse.empty() && (set.mse.front().rows() != m.rows() || set.mse.front().cols() != m.cols()))
      throw ParseError(path.string() + ": criteria have different run or query counts");
    set.criteria.push_back(c);
    set.mse.push_back(std::move(m));
  }
  return set;
}

}  // namespace discrepal
