#include <doctest.h>

#include <cmath>

#include "discrepal/errors.hpp"
#include "discrepal/stats.hpp"
#include "oracles.hpp"

using namespace discrepal;

TEST_CASE("basic moments") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(x) == 2.5);
  CHECK(sample_sd(x) == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(standard_error(x) == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(standard_error(std::vector<double>{7.0}) == 0.0);
}

TEST_CASE("t-test matches the textbook oracle") {
  oracle::Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto na = oracle::uniform_index(rng, 2, 60), nb = oracle::uniform_index(rng, 2, 60);
    std::normal_distribution<double> da(oracle::uniform_real(rng, -1, 1), oracle::uniform_real(rng, 0.1, 2));
    std::normal_distribution<double> db(oracle::uniform_real(rng, -1, 1), oracle::uniform_real(rng, 0.1, 2));
    std::vector<double> a(na), b(nb);
    for (auto& v : a) v = da(rng);
    for (auto& v : b) v = db(rng);
    for (bool welch : {false, true}) {
      const auto want = oracle::textbook_ttest(a, b, welch);
      const auto got = two_sample_ttest(a, b, welch ? TTestKind::welch : TTestKind::student_pooled);
      CHECK(got.statistic == doctest::Approx(want.t).epsilon(1e-10));
      CHECK(got.dof == doctest::Approx(want.dof).epsilon(1e-10));
      CHECK(std::abs(got.p_value - want.p) <= 1e-7);
    }
  }
}

TEST_CASE("degenerate samples") {
  const std::vector<double> z{0.0, 0.0, 0.0}, o{1.0, 1.0, 1.0};
  CHECK(two_sample_ttest(z, z).p_value == 1.0);
  CHECK(two_sample_ttest(z, o).p_value == 0.0);
  CHECK_THROWS_AS(two_sample_ttest(std::vector<double>{1.0}, o), UsageError);
  CHECK(parse_ttest_kind("welch") == TTestKind::welch);
  CHECK_THROWS_AS(parse_ttest_kind("paired"), ConfigError);
}
