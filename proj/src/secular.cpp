#include "discrepal/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "discrepal/errors.hpp"

extern "C" {
// LAPACK: I-th eigenvalue of diag(d) + rho z z^T, d strictly increasing, |z| = 1.
void dlaed4_(const int* n, const int* i, const double* d, const double* z, double* delta, const double* rho,
             double* dlam, int* info);
}

namespace discrepal::secular {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// The deflated problem: poles with weights c z_i^2 that still couple, plus
// eigenvalues of A that are exactly poles.
class Downdate {
 public:
  Downdate(const Eigen::Ref<const Eigen::VectorXd>& base, const Eigen::Ref<const Eigen::VectorXd>& z, double c) {
    if (base.size() != z.size()) throw DimensionError("secular: base and z differ in length");
    if (!(c > 0.0)) throw UsageError("secular: downdate weight must be positive");
    const Eigen::Index n = base.size();
    const double z_norm = z.norm();
    const double scale = n == 0 ? 0.0 : std::max(std::abs(base[0]), std::abs(base[n - 1]));
    const double z_tol = 1e-14 * z_norm;
    const double pole_tol = 8.0 * kEps * std::max(scale, c * z_norm * z_norm);

    poles_.reserve(static_cast<std::size_t>(n));
    weights_.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i > 0 && base[i] < base[i - 1]) throw UsageError("secular: base must be ascending");
      if (std::abs(z[i]) <= z_tol) {
        fixed_.push_back(base[i]);
        continue;
      }
      const double w = c * z[i] * z[i];
      // Coincident poles: rotate the pair so one component decouples.
      if (!poles_.empty() && base[i] - poles_.back() <= pole_tol) {
        weights_.back() += w;
        fixed_.push_back(base[i]);
        continue;
      }
      poles_.push_back(base[i]);
      weights_.push_back(w);
    }
    for (double w : weights_) total_weight_ += w;

    // Negated, reversed problem for dlaed4: A = -(diag(d) + rho u u^T).
    const std::size_t m = poles_.size();
    negated_.resize(m);
    unit_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      negated_[i] = -poles_[m - 1 - i];
      unit_[i] = std::sqrt(weights_[m - 1 - i] / total_weight_);
    }
  }

  std::size_t roots() const { return poles_.size(); }
  const std::vector<double>& fixed() const { return fixed_; }
  const std::vector<double>& poles() const { return poles_; }

  // Bracket of root k.
  double lower(std::size_t k) const { return k == 0 ? poles_[0] - total_weight_ : poles_[k - 1]; }
  double upper(std::size_t k) const { return poles_[k]; }

  // 1 - sum w_i / (p_i - mu)
  double value(double mu) const {
    double s = 0.0;
    for (std::size_t i = 0; i < poles_.size(); ++i) s += weights_[i] / (poles_[i] - mu);
    return 1.0 - s;
  }

  // Root in (lo, hi) where the secular function decreases from + to -.
  double solve(double lo, double hi) const {
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
      if (!(hi - lo > 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)))) break;
      double f = 1.0;
      double df = 0.0;
      for (std::size_t i = 0; i < poles_.size(); ++i) {
        const double inv = 1.0 / (poles_[i] - x);
        const double t = weights_[i] * inv;
        f -= t;
        df -= t * inv;
      }
      if (f == 0.0) return x;
      if (f > 0.0) {
        lo = x;
      } else {
        hi = x;
      }
      double next = x - f / df;
      if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
      if (next == x) break;
      x = next;
    }
    return x;
  }

  double root(std::size_t k) const {
    const int n = static_cast<int>(poles_.size());
    const int index = n - static_cast<int>(k);
    if (n == 1) return poles_[0] - total_weight_;
    thread_local std::vector<double> delta;
    delta.resize(poles_.size());
    double lambda = 0.0;
    int info = 0;
    dlaed4_(&n, &index, negated_.data(), unit_.data(), delta.data(), &total_weight_, &lambda, &info);
    const double mu = -lambda;
    if (info == 0 && mu >= lower(k) && mu <= upper(k)) return mu;
    return solve(lower(k), upper(k));
  }

 private:
  std::vector<double> poles_;
  std::vector<double> weights_;
  std::vector<double> fixed_;
  std::vector<double> negated_;
  std::vector<double> unit_;
  double total_weight_ = 0.0;
};

}  // namespace

double spectral_radius(const Eigen::Ref<const Eigen::VectorXd>& base, const Eigen::Ref<const Eigen::VectorXd>& z,
                       double c) {
  const Downdate dd(base, z, c);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : dd.fixed()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (dd.roots() > 0) {
    lo = std::min(lo, dd.root(0));
    hi = std::max(hi, dd.root(dd.roots() - 1));
  }
  if (!std::isfinite(lo)) return 0.0;
  return std::max(std::abs(lo), std::abs(hi));
}

double frobenius_norm(const Eigen::Ref<const Eigen::VectorXd>& base, const Eigen::Ref<const Eigen::VectorXd>& z,
                      double c) {
  if (base.size() != z.size()) throw DimensionError("secular: base and z differ in length");
  // |diag(b) - c z z^T|_F^2 = sum_i (b_i - c z_i^2)^2 + c^2 sum_{i != j} z_i^2 z_j^2
  const Eigen::ArrayXd z2 = z.array().square();
  const double diag = (base.array() - c * z2).square().sum();
  const double z2_sum = z2.sum();
  const double off = std::max(0.0, z2_sum * z2_sum - z2.square().sum());
  return std::sqrt(std::max(0.0, diag + c * c * off));
}

double nuclear_norm(const Eigen::Ref<const Eigen::VectorXd>& base, const Eigen::Ref<const Eigen::VectorXd>& z,
                    double c) {
  const Downdate dd(base, z, c);
  const double trace = base.sum() - c * z.squaredNorm();
  double negative = 0.0;
  for (double v : dd.fixed())
    if (v < 0.0) negative += v;
  const auto& poles = dd.poles();
  for (std::size_t k = 0; k < dd.roots(); ++k) {
    if (poles[k] <= 0.0) {
      negative += std::min(0.0, dd.root(k));
      continue;
    }
    // First gap reaching into the positive axis: the root is negative iff the
    // decreasing secular function is already below zero at the origin.
    if (dd.lower(k) < 0.0 && dd.value(0.0) < 0.0) negative += std::min(0.0, dd.root(k));
    break;
  }
  return std::max(0.0, trace - 2.0 * negative);
}

Eigen::VectorXd eigenvalues(const Eigen::Ref<const Eigen::VectorXd>& base, const Eigen::Ref<const Eigen::VectorXd>& z,
                            double c) {
  const Downdate dd(base, z, c);
  std::vector<double> all = dd.fixed();
  for (std::size_t k = 0; k < dd.roots(); ++k) all.push_back(dd.root(k));
  std::sort(all.begin(), all.end());
  return Eigen::Map<const Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(all.size()));
}

}  // namespace discrepal::secular
