#include "discrepal/active_learner.hpp"

#include <algorithm>
#include <random>

#include "discrepal/errors.hpp"

namespace discrepal {

QueryState::QueryState(IndexList pool) : pool_(std::move(pool)) {
  if (pool_.empty()) throw UsageError("empty pool");
  unlabeled_ = pool_;
  std::sort(unlabeled_.begin(), unlabeled_.end());
  if (std::adjacent_find(unlabeled_.begin(), unlabeled_.end()) != unlabeled_.end())
    throw UsageError("pool contains duplicate indices");
}

bool QueryState::is_unlabeled(std::size_t index) const {
  return std::binary_search(unlabeled_.begin(), unlabeled_.end(), index);
}

void QueryState::add(std::size_t index) {
  const auto it = std::lower_bound(unlabeled_.begin(), unlabeled_.end(), index);
  if (it == unlabeled_.end() || *it != index)
    throw UsageError("index " + std::to_string(index) + " is not an unlabeled pool member");
  unlabeled_.erase(it);
  labeled_.push_back(index);
}

namespace {

IndexList positions(const PoolGeometry& geometry, const IndexList& indices) {
  IndexList out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(geometry.position_of(i));
  return out;
}

}  // namespace

double score_candidate(const QueryState& state, const Dataset& data, std::size_t s, Criterion criterion,
                       const KernelSpec& kernel) {
  if (!state.is_unlabeled(s)) throw UsageError("candidate " + std::to_string(s) + " is not in the unlabeled set");
  const PoolGeometry geometry(data, state.pool(), kernel);
  const auto scores = score_candidates_reference(geometry, positions(geometry, state.labeled()),
                                                 IndexList{geometry.position_of(s)}, criterion);
  return scores.front();
}

std::size_t argmin_candidate(std::span<const double> scores, const IndexList& candidates) {
  if (scores.size() != candidates.size() || candidates.empty())
    throw UsageError("argmin_candidate: scores and candidates must be nonempty and equally long");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] < scores[best] || (scores[i] == scores[best] && candidates[i] < candidates[best])) best = i;
  }
  return candidates[best];
}

std::size_t select_next(const QueryState& state, const PoolGeometry& geometry, Criterion criterion, Rng& rng,
                        const SelectionOptions& options) {
  const auto& unlabeled = state.unlabeled();
  if (unlabeled.empty()) throw UsageError("pool exhausted");
  if (criterion == Criterion::random) {
    std::uniform_int_distribution<std::size_t> pick(0, unlabeled.size() - 1);
    return unlabeled[pick(rng)];
  }
  if (unlabeled.size() == 1) return unlabeled.front();
  const auto scores = score_candidates(geometry, positions(geometry, state.labeled()), positions(geometry, unlabeled),
                                       criterion, options.backend);
  return argmin_candidate(scores, unlabeled);
}

std::size_t select_next(const QueryState& state, const Dataset& data, Criterion criterion, const KernelSpec& kernel,
                        Rng& rng, const SelectionOptions& options) {
  if (state.unlabeled().empty()) throw UsageError("pool exhausted");
  if (criterion == Criterion::random) {
    std::uniform_int_distribution<std::size_t> pick(0, state.unlabeled().size() - 1);
    return state.unlabeled()[pick(rng)];
  }
  const PoolGeometry geometry(data, state.pool(), kernel);
  return select_next(state, geometry, criterion, rng, options);
}

IndexList run_session(QueryState& state, const PoolGeometry& geometry, Criterion criterion, std::size_t budget,
                      Rng& rng, const SelectionOptions& options) {
  if (budget > state.unlabeled().size())
    throw UsageError("budget " + std::to_string(budget) + " exceeds the " + std::to_string(state.unlabeled().size()) +
                     " unlabeled points");
  IndexList queries;
  queries.reserve(budget);
  for (std::size_t q = 0; q < budget; ++q) {
    const auto s = select_next(state, geometry, criterion, rng, options);
    state.add(s);
    queries.push_back(s);
  }
  return queries;
}

IndexList run_session(QueryState& state, const Dataset& data, Criterion criterion, const KernelSpec& kernel,
                      std::size_t budget, Rng& rng, const SelectionOptions& options) {
  if (budget > state.unlabeled().size())
    throw UsageError("budget " + std::to_string(budget) + " exceeds the " + std::to_string(state.unlabeled().size()) +
                     " unlabeled points");
  if (budget == 0) return {};
  if (criterion == Criterion::random) {
    IndexList queries;
    for (std::size_t q = 0; q < budget; ++q) {
      std::uniform_int_distribution<std::size_t> pick(0, state.unlabeled().size() - 1);
      const auto s = state.unlabeled()[pick(rng)];
      state.add(s);
      queries.push_back(s);
    }
    return queries;
  }
  const PoolGeometry geometry(data, state.pool(), kernel);
  return run_session(state, geometry, criterion, budget, rng, options);
}

}  // namespace discrepal
