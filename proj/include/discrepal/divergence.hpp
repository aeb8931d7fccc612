#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>

namespace discrepal {

/// Diagonal reweighting of the pool with labeled rows first:
/// 1/n_P - 1/n_Q for the n_Q labeled rows, 1/n_P for the rest.
struct WeightsD {
  Eigen::VectorXd diagonal;
  std::size_t n_labeled = 0;
};

// Throws UsageError "empty labeled set" when n_q == 0, and for n_q > n_p.
WeightsD build_D(std::size_t n_p, std::size_t n_q);

// (1/n_P) X_P^T X_P - (1/n_Q) X_Q^T X_Q, symmetrized.
Eigen::MatrixXd build_M_linear(const Eigen::MatrixXd& x_pool, const Eigen::MatrixXd& x_labeled);

// K_PP * diag(D). K_PP must be ordered like D (labeled rows first).
Eigen::MatrixXd build_MK(const Eigen::MatrixXd& k_pool, const WeightsD& d);

enum class SpectrumSource { M, MK };

/// Real eigenvalues sorted by descending magnitude.
///
/// For source M the optional eigenvectors are orthonormal columns of M. For
/// source MK they are the columns beta_i = D K^(1/2) w_i, which are
/// eigenvectors of M_K^T for every nonzero eigenvalue (w_i are the unit
/// eigenvectors of K^(1/2) D K^(1/2)).
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  std::optional<Eigen::MatrixXd> eigenvectors;
  SpectrumSource source = SpectrumSource::M;

  double largest_magnitude() const;  // |lambda_1|, 0 for an empty spectrum
};

// Eigenvalues with |lambda| <= this fraction of max(1, |lambda_1|) count as zero.
inline constexpr double kZeroEigenvalueTolerance = 1e-12;
bool is_effectively_zero(double eigenvalue, const Spectrum& spectrum);

enum class EigenvectorMode { skip, compute };

// Symmetric eigendecomposition of M.
Spectrum spectrum(const Eigen::MatrixXd& m, EigenvectorMode mode = EigenvectorMode::skip);

/// Spectrum of M_K = K_PP diag(D) through the similar symmetric matrix
/// K^(1/2) diag(D) K^(1/2). Negative roundoff eigenvalues of K are clipped
/// to zero before the square root.
Spectrum spectrum(const Eigen::MatrixXd& k_pool, const WeightsD& d, EigenvectorMode mode = EigenvectorMode::skip);

// Same, for a precomputed K^(1/2) and weights in the same row order.
Spectrum spectrum_from_sqrt(const Eigen::MatrixXd& k_pool_sqrt, const Eigen::VectorXd& weights,
                            EigenvectorMode mode = EigenvectorMode::skip);

/// General (nonsymmetric) eigenvalues of an arbitrary square matrix. Throws
/// NumericalError when an imaginary part exceeds 1e-8 * max(1, |lambda_1|).
Spectrum spectrum_general(const Eigen::MatrixXd& m, SpectrumSource source);

// Symmetric square root of a PSD matrix, negative eigenvalues clipped to 0.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& k);

// 4 capacity^2 |lambda_1|
double discrepancy(const Spectrum& s, double capacity);
// 4 capacity^2 sqrt(sum lambda_i^2)
double mmd_spectral(const Spectrum& s, double capacity);
// 4 capacity^2 sum |lambda_i|
double nuclear_discrepancy(const Spectrum& s, double capacity);

/// Kernel-mean MMD: mmd_capacity * |mu_P - mu_Q| in the RKHS of the kernel
/// that produced `kp_pool`. Rows of `kp_pool` are ordered labeled-first, so
/// the labeled set is the leading n_q x n_q block.
double mmd_kernel_mean(const Eigen::MatrixXd& kp_pool, std::size_t n_q, double mmd_capacity);

struct DivergenceValues {
  double discrepancy = 0.0;
  double mmd = 0.0;
  double nuclear = 0.0;
};

DivergenceValues divergences(const Spectrum& s, double capacity);

}  // namespace discrepal
