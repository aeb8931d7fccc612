#include "discrepal/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>
#include <numeric>

#include "discrepal/errors.hpp"

namespace discrepal {

std::string to_string(TTestKind kind) { return kind == TTestKind::welch ? "welch" : "student_pooled"; }

TTestKind parse_ttest_kind(std::string_view name) {
  if (name == "student_pooled" || name == "student") return TTestKind::student_pooled;
  if (name == "welch") return TTestKind::welch;
  throw ConfigError("unknown t-test kind '" + std::string(name) + "'");
}

double mean(std::span<const double> x) {
  if (x.empty()) throw UsageError("mean of an empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

namespace {

double sum_sq_dev(std::span<const double> x, double m) {
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s;
}

}  // namespace

double sample_sd(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  return std::sqrt(sum_sq_dev(x, mean(x)) / static_cast<double>(x.size() - 1));
}

double standard_error(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  return sample_sd(x) / std::sqrt(static_cast<double>(x.size()));
}

TTestResult two_sample_ttest(std::span<const double> a, std::span<const double> b, TTestKind kind) {
  if (a.size() < 2 || b.size() < 2) throw UsageError("t-test needs at least 2 values per sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a);
  const double mb = mean(b);
  const double va = sum_sq_dev(a, ma) / (na - 1.0);
  const double vb = sum_sq_dev(b, mb) / (nb - 1.0);

  TTestResult r;
  double se2 = 0.0;
  if (kind == TTestKind::student_pooled) {
    r.dof = na + nb - 2.0;
    const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / r.dof;
    se2 = pooled * (1.0 / na + 1.0 / nb);
  } else {
    const double qa = va / na;
    const double qb = vb / nb;
    se2 = qa + qb;
    r.dof = se2 > 0.0 ? se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0)) : na + nb - 2.0;
  }

  if (se2 <= 0.0) {
    if (ma == mb) {
      r.statistic = 0.0;
      r.p_value = 1.0;
    } else {
      r.statistic = ma > mb ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
    return r;
  }
  r.statistic = (ma - mb) / std::sqrt(se2);
  const boost::math::students_t dist(r.dof);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.statistic)));
  r.p_value = std::min(1.0, r.p_value);
  return r;
}

}  // namespace discrepal
