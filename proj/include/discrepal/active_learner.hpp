#pragma once

#include <cstddef>
#include <span>

#include "discrepal/candidate_scoring.hpp"
#include "discrepal/data_model.hpp"
#include "discrepal/kernel.hpp"
#include "discrepal/types.hpp"

namespace discrepal {

/// Pool P, labeled set Q (in query order) and unlabeled set U = P \ Q, all as
/// dataset row indices.
class QueryState {
 public:
  explicit QueryState(IndexList pool);

  const IndexList& pool() const { return pool_; }
  const IndexList& labeled() const { return labeled_; }
  // Ascending.
  const IndexList& unlabeled() const { return unlabeled_; }
  bool is_unlabeled(std::size_t index) const;

  // Moves `index` from U to Q. Throws UsageError if it is not in U.
  void add(std::size_t index);

 private:
  IndexList pool_;
  IndexList labeled_;
  IndexList unlabeled_;
};

struct SelectionOptions {
  ScoringBackend backend = ScoringBackend::rank_one;
};

// Divergence (capacity 1) between the pool and labeled + {s}, computed from a
// fresh M_K spectrum in the model kernel. Labels are never read.
double score_candidate(const QueryState& state, const Dataset& data, std::size_t s, Criterion criterion,
                       const KernelSpec& kernel);

// Candidate with the lowest score; ties go to the smallest index.
std::size_t argmin_candidate(std::span<const double> scores, const IndexList& candidates);

/// Next query: argmin of the criterion over U (smallest index on ties), or a
/// uniform draw from U for Criterion::random. Throws UsageError
/// "pool exhausted" when U is empty.
std::size_t select_next(const QueryState& state, const PoolGeometry& geometry, Criterion criterion, Rng& rng,
                        const SelectionOptions& options = {});
std::size_t select_next(const QueryState& state, const Dataset& data, Criterion criterion, const KernelSpec& kernel,
                        Rng& rng, const SelectionOptions& options = {});

/// Applies select_next `budget` times, updating the state after each query.
/// Returns the queries in selection order.
IndexList run_session(QueryState& state, const PoolGeometry& geometry, Criterion criterion, std::size_t budget,
                      Rng& rng, const SelectionOptions& options = {});
IndexList run_session(QueryState& state, const Dataset& data, Criterion criterion, const KernelSpec& kernel,
                      std::size_t budget, Rng& rng, const SelectionOptions& options = {});

}  // namespace discrepal
