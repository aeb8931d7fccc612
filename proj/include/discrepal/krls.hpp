#pragma once

#include <Eigen/Dense>

#include "discrepal/data_model.hpp"
#include "discrepal/kernel.hpp"
#include "discrepal/types.hpp"

namespace discrepal {

// Regularization and the output bound that together fix the hypothesis ball
// {h : |h|_K <= capacity()}.
struct ModelConfig {
  double reg_lambda = 1.0;
  double f_max = 1.0;

  double capacity() const;  // f_max / sqrt(reg_lambda); throws for reg_lambda <= 0
};

// h(x) = sum_i alpha_i K(support_i, x).
struct TrainedModel {
  Eigen::MatrixXd support_points;     // m x d
  Eigen::VectorXd dual_coefficients;  // m
  KernelSpec kernel = KernelSpec::linear();
  IndexList support;  // dataset rows behind support_points, empty when fit on a bare matrix
};

/// Minimizes mean squared error + reg_lambda * |h|_K^2 over the RKHS by
/// solving (G + m * reg_lambda * I) alpha = targets with a Cholesky
/// factorization. Throws NumericalError when the solve residual exceeds
/// 1e-6 * |targets|.
TrainedModel fit(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets, const KernelSpec& kernel,
                 double reg_lambda);

// Fits on the given dataset rows and records them as the support.
TrainedModel fit(const Dataset& data, const IndexList& rows, const KernelSpec& kernel, double reg_lambda);

Eigen::VectorXd predict(const TrainedModel& model, const Eigen::MatrixXd& points);
Eigen::VectorXd predict(const TrainedModel& model, const Dataset& data, const IndexList& rows);

// sqrt(alpha^T G alpha), clamped at zero.
double rkhs_norm(const TrainedModel& model);

double mse(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets);

}  // namespace discrepal
