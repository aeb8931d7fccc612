#include "discrepal/kernel.hpp"

#include <cmath>
#include <sstream>

#include "discrepal/errors.hpp"

namespace discrepal {

KernelSpec KernelSpec::gaussian(double bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw UsageError("gaussian kernel bandwidth must be positive and finite");
  return KernelSpec(KernelFamily::gaussian, bandwidth, false);
}

KernelSpec KernelSpec::linear() { return KernelSpec(KernelFamily::linear, 0.0, false); }

KernelSpec KernelSpec::squared_of(const KernelSpec& base) {
  if (base.squared_) throw UsageError("squared_of: kernel is already squared (nesting depth is limited to 1)");
  return KernelSpec(base.family_, base.bandwidth_, true);
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (squared_) os << "squared_of(";
  if (family_ == KernelFamily::gaussian) {
    os << "gaussian(" << bandwidth_ << ")";
  } else {
    os << "linear";
  }
  if (squared_) os << ")";
  return os.str();
}

namespace {

inline double base_value(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (spec.family() == KernelFamily::linear) return x.dot(y);
  const double h = spec.bandwidth();
  return std::exp(-(x - y).squaredNorm() / (2.0 * h * h));
}

inline double value(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y) {
  const double v = base_value(spec, x, y);
  return spec.squared() ? v * v : v;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size())
    throw DimensionError("kernel_eval: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
  return value(spec, x, y);
}

Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols())
    throw DimensionError("gram: column counts differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.cols()) + ")");
  // Row-wise access is contiguous after transposing.
  const Eigen::MatrixXd at = a.transpose();
  const Eigen::MatrixXd bt = b.transpose();
  Eigen::MatrixXd out(a.rows(), b.rows());
  const Eigen::Index m = a.rows();
  const Eigen::Index k = b.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) out(i, j) = value(spec, at.col(i), bt.col(j));
  }
  return out;
}

Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd at = a.transpose();
  const Eigen::Index m = a.rows();
  Eigen::MatrixXd out(m, m);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) out(i, j) = value(spec, at.col(i), at.col(j));
  }
  out.triangularView<Eigen::StrictlyLower>() = out.transpose();
  return out;
}

KernelSpec mmd_kernel(const KernelSpec& model_kernel) {
  if (model_kernel.squared()) throw UsageError("mmd_kernel: input kernel is already squared");
  if (model_kernel.family() == KernelFamily::gaussian)
    return KernelSpec::gaussian(model_kernel.bandwidth() / std::sqrt(2.0));
  return KernelSpec::squared_of(model_kernel);
}

}  // namespace discrepal
