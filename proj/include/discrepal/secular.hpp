#pragma once

#include <Eigen/Dense>

// Spectral functionals of a symmetric rank-one downdate
//
//   A = diag(base) - c z z^T,   base ascending, c > 0,
//
// evaluated without forming A. The eigenvalues interlace the poles: one lies
// below base_0 and one in each gap (base_{k-1}, base_k); each is the unique
// root there of the secular function 1 - c sum_i z_i^2 / (base_i - mu).
// Components with negligible z_i, and coincident poles, are deflated first.
namespace discrepal::secular {

// max |mu|
double spectral_radius(const Eigen::Ref<const Eigen::VectorXd>& base, const Eigen::Ref<const Eigen::VectorXd>& z,
                       double c);

// sqrt(sum mu^2), in closed form.
double frobenius_norm(const Eigen::Ref<const Eigen::VectorXd>& base, const Eigen::Ref<const Eigen::VectorXd>& z,
                      double c);

// sum |mu| = trace(A) - 2 sum_{mu < 0} mu; only the negative roots are solved.
double nuclear_norm(const Eigen::Ref<const Eigen::VectorXd>& base, const Eigen::Ref<const Eigen::VectorXd>& z,
                    double c);

// All eigenvalues, ascending.
Eigen::VectorXd eigenvalues(const Eigen::Ref<const Eigen::VectorXd>& base, const Eigen::Ref<const Eigen::VectorXd>& z,
                            double c);

}  // namespace discrepal::secular
