#pragma once

#include <span>
#include <string>
#include <string_view>

namespace discrepal {

enum class TTestKind { student_pooled, welch };

std::string to_string(TTestKind kind);
TTestKind parse_ttest_kind(std::string_view name);

struct TTestResult {
  double statistic = 0.0;  // positive when mean(a) > mean(b)
  double dof = 0.0;
  double p_value = 1.0;  // two-tailed
};

/// Two-sample two-tailed t-test. Two zero-variance samples give p = 1 when
/// their means agree and p = 0 otherwise. Needs at least 2 values per sample.
TTestResult two_sample_ttest(std::span<const double> a, std::span<const double> b,
                             TTestKind kind = TTestKind::student_pooled);

double mean(std::span<const double> x);
// Sample standard deviation (n - 1).
double sample_sd(std::span<const double> x);
// sample_sd / sqrt(n); 0 for a single value.
double standard_error(std::span<const double> x);

}  // namespace discrepal
