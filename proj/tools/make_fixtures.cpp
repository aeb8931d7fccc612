// Writes the synthetic dataset fixtures used by the configs and tests.
//
//   make_fixtures <output dir> [seed]
//
// ringnorm.csv: 20-d, class +1 ~ N(0, 4I), class -1 ~ N(a 1, I), a = 2/sqrt(20).
// banana.csv:   2-d, two interleaved banana-shaped classes with noise.
// two_point.csv: rows (1,0) and (0,1).
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace {

using Row = std::vector<double>;

void write_csv(const std::filesystem::path& path, std::size_t dim, const std::vector<Row>& rows,
               const std::vector<int>& labels) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  for (std::size_t j = 0; j < dim; ++j) out << 'x' << j + 1 << ',';
  out << "y\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (double v : rows[i]) out << fmt::format("{:.6f}", v) << ',';
    out << labels[i] << '\n';
  }
}

void shuffle_rows(std::vector<Row>& rows, std::vector<int>& labels, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(rows.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Row> r;
  std::vector<int> l;
  for (auto i : perm) {
    r.push_back(rows[i]);
    l.push_back(labels[i]);
  }
  rows.swap(r);
  labels.swap(l);
}

void ringnorm(const std::filesystem::path& path, std::mt19937_64& rng) {
  constexpr std::size_t n = 1000, positives = 503, dim = 20;
  const double a = 2.0 / std::sqrt(static_cast<double>(dim));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Row> rows;
  std::vector<int> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i < positives;
    Row r(dim);
    for (auto& v : r) v = pos ? 2.0 * normal(rng) : a + normal(rng);
    rows.push_back(std::move(r));
    labels.push_back(pos ? 1 : -1);
  }
  shuffle_rows(rows, labels, rng);
  write_csv(path, dim, rows, labels);
}

void banana(const std::filesystem::path& path, std::mt19937_64& rng) {
  constexpr std::size_t n = 1000, positives = 439;
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> noise(0.0, 0.35);
  std::vector<Row> rows;
  std::vector<int> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i < positives;
    const double t = angle(rng);
    Row r(2);
    if (pos) {
      r[0] = std::cos(t) + noise(rng);
      r[1] = std::sin(t) + noise(rng);
    } else {
      r[0] = 1.0 - std::cos(t) + noise(rng);
      r[1] = 0.5 - std::sin(t) + noise(rng);
    }
    rows.push_back(std::move(r));
    labels.push_back(pos ? 1 : -1);
  }
  shuffle_rows(rows, labels, rng);
  write_csv(path, 2, rows, labels);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2 || argc > 3) {
    std::cerr << "usage: make_fixtures <output dir> [seed]\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  const std::uint64_t seed = argc == 3 ? std::stoull(argv[2]) : 20170101u;
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(seed);
  ringnorm(dir / "ringnorm.csv", rng);
  banana(dir / "banana.csv", rng);
  std::ofstream two(dir / "two_point.csv", std::ios::binary | std::ios::trunc);
  two << "x1,x2,y\n1,0,1\n0,1,-1\n";
  return 0;
}
