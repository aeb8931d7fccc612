#pragma once

#include <Eigen/Dense>

#include <string>

namespace discrepal {

enum class KernelFamily { gaussian, linear };

/// A model or MMD kernel: Gaussian with bandwidth, linear, or the pointwise
/// square of one of those. Squaring nests at most once.
class KernelSpec {
 public:
  static KernelSpec gaussian(double bandwidth);
  static KernelSpec linear();
  // Throws UsageError when `base` is itself squared.
  static KernelSpec squared_of(const KernelSpec& base);

  KernelFamily family() const { return family_; }
  // Only meaningful for the Gaussian family.
  double bandwidth() const { return bandwidth_; }
  bool squared() const { return squared_; }

  std::string describe() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelSpec(KernelFamily family, double bandwidth, bool squared)
      : family_(family), bandwidth_(bandwidth), squared_(squared) {}

  KernelFamily family_;
  double bandwidth_;
  bool squared_;
};

// gaussian: exp(-|x - y|^2 / (2 sigma^2)); linear: x.y; squared_of(b): b(x, y)^2.
double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

// Entry (i, j) = kernel_eval(spec, a.row(i), b.row(j)). Rows are filled in
// parallel; every entry is computed independently so the result does not
// depend on the thread count.
Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Symmetric Gram of one point set; the lower triangle mirrors the upper.
Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& a);

/// Kernel whose values are the squares of `model_kernel`'s values, which is the
/// MMD kernel that makes the squared-loss function class representable:
/// gaussian(sigma) -> gaussian(sigma / sqrt(2)), linear -> squared_of(linear).
/// Throws UsageError for an already squared kernel.
KernelSpec mmd_kernel(const KernelSpec& model_kernel);

}  // namespace discrepal
