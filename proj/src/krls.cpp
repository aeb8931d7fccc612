#include "discrepal/krls.hpp"

#include <cmath>
#include <string>

#include "discrepal/errors.hpp"

namespace discrepal {

double ModelConfig::capacity() const {
  if (!(reg_lambda > 0.0)) throw UsageError("reg_lambda must be positive");
  if (!(f_max > 0.0)) throw UsageError("f_max must be positive");
  return f_max / std::sqrt(reg_lambda);
}

TrainedModel fit(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets, const KernelSpec& kernel,
                 double reg_lambda) {
  const Eigen::Index m = features.rows();
  if (m < 1) throw UsageError("fit: need at least one training point");
  if (targets.size() != m)
    throw DimensionError("fit: " + std::to_string(m) + " points but " + std::to_string(targets.size()) + " targets");
  if (!(reg_lambda > 0.0)) throw UsageError("fit: reg_lambda must be positive");
  if (!features.allFinite() || !targets.allFinite()) throw UsageError("fit: non-finite input");

  Eigen::MatrixXd system = gram(kernel, features);
  system.diagonal().array() += static_cast<double>(m) * reg_lambda;

  Eigen::VectorXd alpha;
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() == Eigen::Success) {
    alpha = llt.solve(targets);
  } else {
    // Roundoff can push a nearly singular Gram slightly indefinite.
    alpha = system.ldlt().solve(targets);
  }
  const double residual = (system * alpha - targets).norm();
  if (!alpha.allFinite() || residual > 1e-6 * std::max(targets.norm(), 1e-300))
    throw NumericalError("fit: linear solve residual " + std::to_string(residual) + " exceeds tolerance");

  TrainedModel model;
  model.support_points = features;
  model.dual_coefficients = std::move(alpha);
  model.kernel = kernel;
  return model;
}

TrainedModel fit(const Dataset& data, const IndexList& rows, const KernelSpec& kernel, double reg_lambda) {
  TrainedModel model = fit(data.features(rows, Eigen::all), data.labels(rows), kernel, reg_lambda);
  model.support = rows;
  return model;
}

Eigen::VectorXd predict(const TrainedModel& model, const Eigen::MatrixXd& points) {
  if (points.cols() != model.support_points.cols())
    throw DimensionError("predict: model expects " + std::to_string(model.support_points.cols()) +
                         " features, got " + std::to_string(points.cols()));
  return gram(model.kernel, points, model.support_points) * model.dual_coefficients;
}

Eigen::VectorXd predict(const TrainedModel& model, const Dataset& data, const IndexList& rows) {
  return predict(model, Eigen::MatrixXd(data.features(rows, Eigen::all)));
}

double rkhs_norm(const TrainedModel& model) {
  const Eigen::MatrixXd g = gram(model.kernel, model.support_points);
  const double sq = model.dual_coefficients.dot(g * model.dual_coefficients);
  return std::sqrt(std::max(0.0, sq));
}

double mse(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets) {
  if (predictions.size() != targets.size())
    throw DimensionError("mse: length mismatch (" + std::to_string(predictions.size()) + " vs " +
                         std::to_string(targets.size()) + ")");
  if (predictions.size() == 0) throw UsageError("mse: empty input");
  return (predictions - targets).squaredNorm() / static_cast<double>(predictions.size());
}

}  // namespace discrepal
