// Candidate scoring throughput: serial reference scorer versus the rank-one
// scorer with one thread and with every available thread.
//
//   bench_scoring [pool size] [labeled] [reference candidates]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include <fmt/format.h>

#include "discrepal/candidate_scoring.hpp"
#include "discrepal/parallel.hpp"

using namespace discrepal;

namespace {

template <typename F>
double time_it(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 650;
  const std::size_t n_labeled = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 25;
  const std::size_t n_reference = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 10;

  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(n), 20);
  for (auto& v : data.features.reshaped()) v = normal(rng);
  data.labels = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));

  IndexList pool(n), labeled, candidates;
  for (std::size_t i = 0; i < n; ++i) {
    pool[i] = i;
    (i < n_labeled ? labeled : candidates).push_back(i);
  }
  const PoolGeometry geometry(data, pool, KernelSpec::gaussian(1.778));
  const IndexList few(candidates.begin(), candidates.begin() + static_cast<long>(std::min(n_reference, candidates.size())));
  const int threads = max_threads();

  fmt::print("pool {}, labeled {}, candidates {}, threads available {}\n", n, n_labeled, candidates.size(), threads);
  for (auto c : {Criterion::discrepancy, Criterion::mmd, Criterion::nuclear}) {
    std::vector<double> ref, serial, parallel;
    const double t_ref = time_it([&] { ref = score_candidates_reference(geometry, labeled, few, c); });
    set_max_threads(1);
    const double t_serial = time_it([&] { serial = score_candidates_rank_one(geometry, labeled, candidates, c); });
    set_max_threads(threads);
    const double t_parallel = time_it([&] { parallel = score_candidates_rank_one(geometry, labeled, candidates, c); });
    double gap = 0.0;
    for (std::size_t j = 0; j < few.size(); ++j) gap = std::max(gap, std::abs(ref[j] - serial[j]) / (1.0 + ref[j]));
    const double per_ref = t_ref / static_cast<double>(few.size());
    fmt::print(
        "{:<12} reference {:.4f} s/candidate (all {} ~ {:.1f} s) | rank-one 1 thread {:.3f} s | rank-one {} threads "
        "{:.3f} s | speedup vs reference {:.0f}x | max rel gap {:.2e}\n",
        to_string(c), per_ref, candidates.size(), per_ref * static_cast<double>(candidates.size()), t_serial, threads,
        t_parallel, per_ref * static_cast<double>(candidates.size()) / t_serial, gap);
  }
  return 0;
}
