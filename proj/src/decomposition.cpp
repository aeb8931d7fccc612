#include "discrepal/decomposition.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "discrepal/divergence.hpp"
#include "discrepal/errors.hpp"
#include "discrepal/kernel.hpp"

namespace discrepal {

DecompositionResult decompose_linear(const Eigen::VectorXd& u, const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() != u.size())
    throw DimensionError("decompose_linear: u has " + std::to_string(u.size()) + " entries, M is " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  const Spectrum s = spectrum(m, EigenvectorMode::compute);
  DecompositionResult r;
  r.eigenvalues = s.eigenvalues;
  r.weights = (s.eigenvectors->transpose() * u).array().square();
  r.contributions = r.weights.cwiseProduct(r.eigenvalues);
  return r;
}

DecompositionResult decompose_kernel(const TrainedModel& f_model, const TrainedModel& h_model, const Dataset& pool,
                                     const QueryState& state) {
  if (!(f_model.kernel == h_model.kernel)) throw UsageError("decompose_kernel: models use different kernels");
  if (state.labeled().empty()) throw UsageError("empty labeled set");
  const KernelSpec& kernel = f_model.kernel;

  IndexList order = state.labeled();
  order.insert(order.end(), state.unlabeled().begin(), state.unlabeled().end());
  const Eigen::MatrixXd x_pool = pool.features(order, Eigen::all);
  const Eigen::MatrixXd k_pool = gram(kernel, x_pool);
  const WeightsD d = build_D(order.size(), state.labeled().size());
  const Spectrum s = spectrum(k_pool, d, EigenvectorMode::compute);
  const Eigen::MatrixXd& beta = *s.eigenvectors;

  // u = f - h in the span of both supports.
  Eigen::MatrixXd support(f_model.support_points.rows() + h_model.support_points.rows(), x_pool.cols());
  support << f_model.support_points, h_model.support_points;
  Eigen::VectorXd coeffs(support.rows());
  coeffs << f_model.dual_coefficients, -h_model.dual_coefficients;

  const Eigen::RowVectorXd numerators = (coeffs.transpose() * gram(kernel, support, x_pool)) * beta;
  const Eigen::VectorXd norms_sq = (beta.transpose() * k_pool).cwiseProduct(beta.transpose()).rowwise().sum();

  DecompositionResult r;
  r.eigenvalues = s.eigenvalues;
  r.weights = Eigen::VectorXd::Zero(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (is_effectively_zero(s.eigenvalues[i], s)) continue;
    if (norms_sq[i] <= 1e-24)
      throw NumericalError("decompose_kernel: degenerate eigenvector for eigenvalue " +
                           std::to_string(s.eigenvalues[i]));
    r.weights[i] = numerators[i] * numerators[i] / norms_sq[i];
  }
  r.contributions = r.weights.cwiseProduct(r.eigenvalues);
  return r;
}

LossGap loss_gap(const TrainedModel& f_model, const TrainedModel& h_model, const Dataset& data,
                 const QueryState& state) {
  LossGap gap;
  gap.pool_loss = mse(predict(h_model, data, state.pool()), predict(f_model, data, state.pool()));
  if (!state.labeled().empty())
    gap.labeled_loss = mse(predict(h_model, data, state.labeled()), predict(f_model, data, state.labeled()));
  return gap;
}

std::vector<BinSum> bin_contributions(const DecompositionResult& r, const std::vector<std::size_t>& edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] == 0 || (i > 0 && edges[i] <= edges[i - 1]))
      throw UsageError("bin_contributions: edges must be positive and strictly increasing");
  }
  std::vector<BinSum> bins;
  std::size_t first = 1;  // 1-based
  const auto n = static_cast<std::size_t>(r.contributions.size());
  auto range_sum = [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t k = lo; k <= hi && k <= n; ++k) s += r.contributions[static_cast<Eigen::Index>(k - 1)];
    return s;
  };
  for (auto last : edges) {
    const std::string name =
        first == last ? "EV" + std::to_string(first) : "EV" + std::to_string(first) + "_" + std::to_string(last);
    bins.push_back({name, range_sum(first, last)});
    first = last + 1;
  }
  bins.push_back({"EV" + std::to_string(first) + "plus", range_sum(first, n)});
  return bins;
}

}  // namespace discrepal
