#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "discrepal/active_learner.hpp"
#include "discrepal/data_model.hpp"
#include "discrepal/krls.hpp"

namespace discrepal {

/// Per-eigenvalue split of L_P(h, f) - L_Q(h, f) = sum_i ubar_i^2 lambda_i,
/// eigenvalues ordered by descending magnitude.
struct DecompositionResult {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd weights;        // ubar_i^2
  Eigen::VectorXd contributions;  // ubar_i^2 lambda_i

  double total() const { return contributions.sum(); }
};

// u: coefficient vector of h - f in explicit features; M: symmetric d x d.
DecompositionResult decompose_linear(const Eigen::VectorXd& u, const Eigen::MatrixXd& m);

/// Kernel form. f_model and h_model must share a kernel; h is normally fit on
/// the labeled set of `state`. Eigenpairs come from M_K^T with the pool
/// ordered labeled-first, and
///   ubar_i = c^T K_{S,P} beta_i / sqrt(beta_i^T K_PP beta_i),
/// where S stacks both models' support points and c their coefficients
/// (f positive, h negated). Eigenvalues at or below the zero tolerance
/// contribute nothing. Throws NumericalError if a nonzero eigenvalue has a
/// degenerate eigenvector.
DecompositionResult decompose_kernel(const TrainedModel& f_model, const TrainedModel& h_model, const Dataset& pool,
                                     const QueryState& state);

struct LossGap {
  double pool_loss = 0.0;     // L_P(h, f)
  double labeled_loss = 0.0;  // L_Q(h, f)
};

// Mean squared difference between the two models over the pool and over the
// labeled set.
LossGap loss_gap(const TrainedModel& f_model, const TrainedModel& h_model, const Dataset& data,
                 const QueryState& state);

struct BinSum {
  std::string name;
  double value = 0.0;
};

/// Partial sums of contributions over 1-based eigenvalue ranges. With the
/// default edges {1, 9, 49}: EV1, EV2_9, EV10_49, EV50plus. Ranges past the
/// end of the spectrum are 0.
std::vector<BinSum> bin_contributions(const DecompositionResult& r, const std::vector<std::size_t>& edges = {1, 9, 49});

}  // namespace discrepal
