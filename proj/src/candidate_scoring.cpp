#include "discrepal/candidate_scoring.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

#include "discrepal/divergence.hpp"
#include "discrepal/errors.hpp"
#include "discrepal/secular.hpp"
#include "discrepal/symmetric_eigen.hpp"

namespace discrepal {

namespace {

constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

void check_scorable(Criterion criterion) {
  if (criterion == Criterion::random) throw UsageError("random criterion has no candidate score");
}

void check_candidates(const PoolGeometry& geometry, const IndexList& labeled, const IndexList& candidates) {
  std::vector<char> in_labeled(geometry.size(), 0);
  for (auto q : labeled) {
    if (q >= geometry.size()) throw UsageError("labeled position out of range");
    if (in_labeled[q]) throw UsageError("duplicate labeled position");
    in_labeled[q] = 1;
  }
  for (auto s : candidates) {
    if (s >= geometry.size()) throw UsageError("candidate position out of range");
    if (in_labeled[s]) throw UsageError("candidate is already labeled");
  }
}

double criterion_value(const Spectrum& s, Criterion criterion) {
  switch (criterion) {
    case Criterion::discrepancy:
      return discrepancy(s, 1.0);
    case Criterion::mmd:
      return mmd_spectral(s, 1.0);
    case Criterion::nuclear:
      return nuclear_discrepancy(s, 1.0);
    case Criterion::random:
      break;
  }
  throw UsageError("random criterion has no candidate score");
}

}  // namespace

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::discrepancy:
      return "discrepancy";
    case Criterion::mmd:
      return "mmd";
    case Criterion::nuclear:
      return "nuclear";
    case Criterion::random:
      return "random";
  }
  return "unknown";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "discrepancy" || name == "disc" || name == "d") return Criterion::discrepancy;
  if (name == "mmd") return Criterion::mmd;
  if (name == "nuclear" || name == "nd" || name == "nuclear_discrepancy") return Criterion::nuclear;
  if (name == "random") return Criterion::random;
  throw ConfigError("unknown criterion '" + std::string(name) + "'");
}

std::string to_string(ScoringBackend b) { return b == ScoringBackend::reference ? "reference" : "rank_one"; }

ScoringBackend parse_scoring_backend(std::string_view name) {
  if (name == "reference") return ScoringBackend::reference;
  if (name == "rank_one") return ScoringBackend::rank_one;
  throw ConfigError("unknown scoring backend '" + std::string(name) + "'");
}

PoolGeometry::PoolGeometry(const Dataset& data, IndexList pool, const KernelSpec& kernel)
    : pool_(std::move(pool)), kernel_(kernel), position_(data.size(), kAbsent) {
  if (pool_.empty()) throw UsageError("empty pool");
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if (pool_[i] >= data.size()) throw UsageError("pool index " + std::to_string(pool_[i]) + " out of range");
    if (position_[pool_[i]] != kAbsent) throw UsageError("duplicate pool index " + std::to_string(pool_[i]));
    position_[pool_[i]] = i;
  }
  gram_ = discrepal::gram(kernel_, Eigen::MatrixXd(data.features(pool_, Eigen::all)));
  gram_sqrt_ = psd_sqrt(gram_);
}

std::size_t PoolGeometry::position_of(std::size_t dataset_index) const {
  if (dataset_index >= position_.size() || position_[dataset_index] == kAbsent)
    throw UsageError("index " + std::to_string(dataset_index) + " is not in the pool");
  return position_[dataset_index];
}

Eigen::VectorXd pool_weights(std::size_t n_pool, const IndexList& labeled) {
  if (labeled.empty()) throw UsageError("empty labeled set");
  const double inv_p = 1.0 / static_cast<double>(n_pool);
  const double inv_q = 1.0 / static_cast<double>(labeled.size());
  Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_pool), inv_p);
  for (auto q : labeled) w[static_cast<Eigen::Index>(q)] = inv_p - inv_q;
  return w;
}

std::vector<double> score_candidates_reference(const PoolGeometry& geometry, const IndexList& labeled,
                                               const IndexList& candidates, Criterion criterion) {
  check_scorable(criterion);
  check_candidates(geometry, labeled, candidates);
  const std::size_t n = geometry.size();
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (auto s : candidates) {
    // Labeled-first row order: Q, s, then the remaining pool in position order.
    IndexList order = labeled;
    order.push_back(s);
    std::vector<char> taken(n, 0);
    for (auto q : order) taken[q] = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (!taken[i]) order.push_back(i);
    const Eigen::MatrixXd k = geometry.gram()(order, order);
    const WeightsD d = build_D(n, labeled.size() + 1);
    scores.push_back(criterion_value(spectrum(k, d), criterion));
  }
  return scores;
}

std::vector<double> score_candidates_rank_one(const PoolGeometry& geometry, const IndexList& labeled,
                                              const IndexList& candidates, Criterion criterion) {
  check_scorable(criterion);
  check_candidates(geometry, labeled, candidates);
  const std::size_t n = geometry.size();
  const double c = 1.0 / static_cast<double>(labeled.size() + 1);

  // Base weights treat every candidate as unlabeled; the candidate's own
  // weight change 1/n_P -> 1/n_P - c is the rank-one downdate.
  Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
  for (auto q : labeled) w[static_cast<Eigen::Index>(q)] -= c;
  const Eigen::MatrixXd& root = geometry.gram_sqrt();
  Eigen::MatrixXd base = root * w.asDiagonal() * root;
  base = 0.5 * (base + base.transpose()).eval();
  const SymmetricEigen es = symmetric_eigen(base, true);
  const Eigen::VectorXd& poles = es.values;
  // z_s = U^T K^(1/2) e_s for every pool position at once.
  const Eigen::MatrixXd z_all = es.vectors.transpose() * root;

  std::vector<double> scores(candidates.size());
  const auto count = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto z = z_all.col(static_cast<Eigen::Index>(candidates[static_cast<std::size_t>(i)]));
    double value = 0.0;
    switch (criterion) {
      case Criterion::discrepancy:
        value = secular::spectral_radius(poles, z, c);
        break;
      case Criterion::mmd:
        value = secular::frobenius_norm(poles, z, c);
        break;
      case Criterion::nuclear:
        value = secular::nuclear_norm(poles, z, c);
        break;
      case Criterion::random:
        break;
    }
    scores[static_cast<std::size_t>(i)] = 4.0 * value;
  }
  return scores;
}

std::vector<double> score_candidates(const PoolGeometry& geometry, const IndexList& labeled,
                                     const IndexList& candidates, Criterion criterion, ScoringBackend backend) {
  if (backend == ScoringBackend::reference)
    return score_candidates_reference(geometry, labeled, candidates, criterion);
  return score_candidates_rank_one(geometry, labeled, candidates, criterion);
}

}  // namespace discrepal
