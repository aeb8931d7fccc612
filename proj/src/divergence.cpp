#include "discrepal/divergence.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "discrepal/errors.hpp"
#include "discrepal/symmetric_eigen.hpp"

namespace discrepal {

namespace {

// Orders eigenpairs by descending |lambda|; equal magnitudes put the positive
// value first so the order is fully determined.
std::vector<Eigen::Index> magnitude_order(const Eigen::VectorXd& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(values[a]);
    const double mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    return values[a] > values[b];
  });
  return order;
}

Spectrum sorted_spectrum(const Eigen::VectorXd& values, const Eigen::MatrixXd* vectors, SpectrumSource source) {
  const auto order = magnitude_order(values);
  Spectrum s;
  s.source = source;
  s.eigenvalues.resize(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) s.eigenvalues[static_cast<Eigen::Index>(i)] = values[order[i]];
  if (vectors != nullptr) {
    Eigen::MatrixXd sorted(vectors->rows(), vectors->cols());
    for (std::size_t i = 0; i < order.size(); ++i) sorted.col(static_cast<Eigen::Index>(i)) = vectors->col(order[i]);
    s.eigenvectors = std::move(sorted);
  }
  return s;
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

WeightsD build_D(std::size_t n_p, std::size_t n_q) {
  if (n_q == 0) throw UsageError("empty labeled set");
  if (n_q > n_p)
    throw UsageError("build_D: labeled set (" + std::to_string(n_q) + ") larger than pool (" + std::to_string(n_p) +
                     ")");
  WeightsD d;
  d.n_labeled = n_q;
  const double inv_p = 1.0 / static_cast<double>(n_p);
  const double inv_q = 1.0 / static_cast<double>(n_q);
  d.diagonal = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_p), inv_p);
  d.diagonal.head(static_cast<Eigen::Index>(n_q)).setConstant(inv_p - inv_q);
  return d;
}

Eigen::MatrixXd build_M_linear(const Eigen::MatrixXd& x_pool, const Eigen::MatrixXd& x_labeled) {
  if (x_pool.cols() != x_labeled.cols())
    throw DimensionError("build_M_linear: pool has " + std::to_string(x_pool.cols()) + " columns, labeled set " +
                         std::to_string(x_labeled.cols()));
  if (x_pool.cols() < 1) throw DimensionError("build_M_linear: need at least one feature");
  if (x_labeled.rows() < 1) throw UsageError("empty labeled set");
  const Eigen::MatrixXd m = x_pool.transpose() * x_pool / static_cast<double>(x_pool.rows()) -
                            x_labeled.transpose() * x_labeled / static_cast<double>(x_labeled.rows());
  return symmetrized(m);
}

Eigen::MatrixXd build_MK(const Eigen::MatrixXd& k_pool, const WeightsD& d) {
  if (k_pool.rows() != k_pool.cols() || k_pool.rows() != d.diagonal.size())
    throw DimensionError("build_MK: Gram is " + std::to_string(k_pool.rows()) + "x" + std::to_string(k_pool.cols()) +
                         " but D has " + std::to_string(d.diagonal.size()) + " entries");
  return k_pool * d.diagonal.asDiagonal();
}

double Spectrum::largest_magnitude() const { return eigenvalues.size() == 0 ? 0.0 : std::abs(eigenvalues[0]); }

bool is_effectively_zero(double eigenvalue, const Spectrum& spectrum) {
  return std::abs(eigenvalue) <= kZeroEigenvalueTolerance * std::max(1.0, spectrum.largest_magnitude());
}

Spectrum spectrum(const Eigen::MatrixXd& m, EigenvectorMode mode) {
  if (m.rows() != m.cols()) throw DimensionError("spectrum: matrix is not square");
  if (!m.allFinite()) throw UsageError("spectrum: matrix has non-finite entries");
  const bool vectors = mode == EigenvectorMode::compute;
  const SymmetricEigen es = symmetric_eigen(symmetrized(m), vectors);
  return sorted_spectrum(es.values, vectors ? &es.vectors : nullptr, SpectrumSource::M);
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& k) {
  if (k.rows() != k.cols()) throw DimensionError("psd_sqrt: matrix is not square");
  const SymmetricEigen es = symmetric_eigen(symmetrized(k), true);
  const Eigen::VectorXd roots = es.values.cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd& v = es.vectors;
  return symmetrized(v * roots.asDiagonal() * v.transpose());
}

Spectrum spectrum_from_sqrt(const Eigen::MatrixXd& k_pool_sqrt, const Eigen::VectorXd& weights,
                            EigenvectorMode mode) {
  if (k_pool_sqrt.rows() != k_pool_sqrt.cols() || k_pool_sqrt.rows() != weights.size())
    throw DimensionError("spectrum: Gram root and weights disagree in size");
  const Eigen::MatrixXd similar = k_pool_sqrt * weights.asDiagonal() * k_pool_sqrt;
  Spectrum s = spectrum(similar, mode);
  s.source = SpectrumSource::MK;
  if (s.eigenvectors) s.eigenvectors = weights.asDiagonal() * (k_pool_sqrt * *s.eigenvectors);
  return s;
}

Spectrum spectrum(const Eigen::MatrixXd& k_pool, const WeightsD& d, EigenvectorMode mode) {
  if (k_pool.rows() != k_pool.cols() || k_pool.rows() != d.diagonal.size())
    throw DimensionError("spectrum: Gram and D disagree in size");
  if (!k_pool.allFinite()) throw UsageError("spectrum: Gram has non-finite entries");
  return spectrum_from_sqrt(psd_sqrt(k_pool), d.diagonal, mode);
}

Spectrum spectrum_general(const Eigen::MatrixXd& m, SpectrumSource source) {
  if (m.rows() != m.cols()) throw DimensionError("spectrum: matrix is not square");
  if (!m.allFinite()) throw UsageError("spectrum: matrix has non-finite entries");
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("spectrum: eigensolver did not converge");
  const Eigen::VectorXcd values = es.eigenvalues();
  const double scale = std::max(1.0, values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i].imag()) > 1e-8 * scale)
      throw NumericalError("spectrum: eigenvalue with imaginary part " + std::to_string(values[i].imag()));
  }
  return sorted_spectrum(values.real(), nullptr, source);
}

double discrepancy(const Spectrum& s, double capacity) {
  return 4.0 * capacity * capacity * s.largest_magnitude();
}

double mmd_spectral(const Spectrum& s, double capacity) {
  return 4.0 * capacity * capacity * s.eigenvalues.norm();
}

double nuclear_discrepancy(const Spectrum& s, double capacity) {
  return 4.0 * capacity * capacity * s.eigenvalues.cwiseAbs().sum();
}

double mmd_kernel_mean(const Eigen::MatrixXd& kp_pool, std::size_t n_q, double mmd_capacity) {
  const auto n_p = static_cast<std::size_t>(kp_pool.rows());
  if (kp_pool.rows() != kp_pool.cols()) throw DimensionError("mmd_kernel_mean: Gram is not square");
  if (n_q == 0) throw UsageError("empty labeled set");
  if (n_q > n_p) throw DimensionError("mmd_kernel_mean: labeled set larger than pool");
  const auto q = static_cast<Eigen::Index>(n_q);
  const double qq = kp_pool.topLeftCorner(q, q).sum();
  const double pq = kp_pool.leftCols(q).sum();
  const double pp = kp_pool.sum();
  const double np = static_cast<double>(n_p);
  const double nq = static_cast<double>(n_q);
  const double inner = qq / (nq * nq) - 2.0 * pq / (np * nq) + pp / (np * np);
  return mmd_capacity * std::sqrt(std::max(0.0, inner));
}

DivergenceValues divergences(const Spectrum& s, double capacity) {
  return {discrepancy(s, capacity), mmd_spectral(s, capacity), nuclear_discrepancy(s, capacity)};
}

}  // namespace discrepal
