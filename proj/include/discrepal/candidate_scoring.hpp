#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

#include "discrepal/data_model.hpp"
#include "discrepal/kernel.hpp"
#include "discrepal/types.hpp"

namespace discrepal {

enum class Criterion { discrepancy, mmd, nuclear, random };

std::string to_string(Criterion c);
// Accepts discrepancy|disc|d, mmd, nuclear|nd|nuclear_discrepancy, random.
Criterion parse_criterion(std::string_view name);

// How candidate sets are scored. Both give the same values up to roundoff.
enum class ScoringBackend {
  // Serial: a fresh M_K spectrum for every candidate set.
  reference,
  // OpenMP over candidates: one eigendecomposition per query step, then each
  // candidate is a rank-one downdate solved through its secular equation.
  rank_one,
};

std::string to_string(ScoringBackend b);
ScoringBackend parse_scoring_backend(std::string_view name);

/// Kernel quantities of a fixed pool: the Gram matrix in the model kernel and
/// its symmetric square root. Positions 0..n-1 follow `pool()`.
class PoolGeometry {
 public:
  PoolGeometry(const Dataset& data, IndexList pool, const KernelSpec& kernel);

  const IndexList& pool() const { return pool_; }
  std::size_t size() const { return pool_.size(); }
  const KernelSpec& kernel() const { return kernel_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::MatrixXd& gram_sqrt() const { return gram_sqrt_; }

  // Position of a dataset row inside the pool; throws UsageError if absent.
  std::size_t position_of(std::size_t dataset_index) const;

 private:
  IndexList pool_;
  KernelSpec kernel_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd gram_sqrt_;
  std::vector<std::size_t> position_;  // dataset index -> pool position, npos when absent
};

// Pool weights (pool order) for labeled positions `labeled`: 1/n_P - 1/n_Q on
// labeled rows, 1/n_P elsewhere.
Eigen::VectorXd pool_weights(std::size_t n_pool, const IndexList& labeled);

/// Criterion value (capacity 1) of every candidate set labeled + {s}, with
/// positions relative to the pool. Serial; recomputes each spectrum from the
/// Gram matrix, ordering rows labeled-first exactly as in the textbook form.
std::vector<double> score_candidates_reference(const PoolGeometry& geometry, const IndexList& labeled,
                                               const IndexList& candidates, Criterion criterion);

/// Same values through rank-one downdates of the shared base
/// K^(1/2) D_base K^(1/2); candidates are scored in parallel.
std::vector<double> score_candidates_rank_one(const PoolGeometry& geometry, const IndexList& labeled,
                                              const IndexList& candidates, Criterion criterion);

std::vector<double> score_candidates(const PoolGeometry& geometry, const IndexList& labeled,
                                     const IndexList& candidates, Criterion criterion, ScoringBackend backend);

}  // namespace discrepal
