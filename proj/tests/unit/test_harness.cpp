#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "discrepal/errors.hpp"
#include "discrepal/harness.hpp"
#include "oracles.hpp"

using namespace discrepal;

namespace {

Dataset blob(std::size_t n, std::uint64_t seed) {
  oracle::Rng rng(seed);
  Dataset d;
  d.features = oracle::random_matrix(rng, n, 2);
  d.labels.resize(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < d.labels.size(); ++i) d.labels(i) = d.features(i, 0) > 0 ? 1.0 : -1.0;
  return d;
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.dataset = "unused.csv";
  cfg.sigma = 1.0;
  cfg.reg_lambda = 0.01;
  cfg.runs = 3;
  cfg.budget = 6;
  cfg.seed = 11;
  cfg.stride = 3;
  return cfg;
}

Eigen::MatrixXd constant_with_noise(double value, double sd, std::size_t runs, std::size_t budget, std::uint64_t seed) {
  oracle::Rng rng(seed);
  std::normal_distribution<double> noise(0.0, sd);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(runs), static_cast<Eigen::Index>(budget));
  for (auto& v : m.reshaped()) v = value + noise(rng);
  return m;
}

}  // namespace

TEST_CASE("config validation names the key") {
  ExperimentConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.runs = 0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("runs"), ConfigError);
  cfg = small_config();
  cfg.reg_lambda = -1.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("lambda"), ConfigError);
  cfg = small_config();
  cfg.criteria.clear();
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("criteria"), ConfigError);
}

TEST_CASE("compare: identical and separated samples") {
  const Eigen::MatrixXd a = constant_with_noise(0.0, 1.0, 20, 10, 1);
  const WinTieLoss same = compare(a, a, 5);
  CHECK(same.tie == 2);
  CHECK(same.win + same.loss == 0);

  const WinTieLoss sep = compare(constant_with_noise(0.0, 1e-6, 100, 50, 2), constant_with_noise(1.0, 1e-6, 100, 50, 3));
  CHECK(sep.win == 10);
  CHECK(sep.win + sep.tie + sep.loss == 50 / 5);
  const WinTieLoss rev = compare(constant_with_noise(1.0, 1e-6, 100, 50, 2), constant_with_noise(0.0, 1e-6, 100, 50, 3));
  CHECK(rev.loss == 10);

  const WinTieLoss one_run = compare(Eigen::MatrixXd::Zero(1, 10), Eigen::MatrixXd::Ones(1, 10));
  CHECK(one_run.tie == 2);
  CHECK_THROWS_AS(compare(Eigen::MatrixXd::Zero(3, 10), Eigen::MatrixXd::Zero(3, 9)), UsageError);
}

TEST_CASE("compare verdicts match the oracle") {
  oracle::Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const double shift = oracle::uniform_real(rng, -0.6, 0.6);
    const Eigen::MatrixXd a = constant_with_noise(shift, oracle::uniform_real(rng, 0.5, 1.5), 30, 5, rng());
    const Eigen::MatrixXd b = constant_with_noise(0.0, oracle::uniform_real(rng, 0.5, 1.5), 30, 5, rng());
    const WinTieLoss w = compare(a, b, 5, 0.05);
    const std::vector<double> ca(a.col(4).begin(), a.col(4).end()), cb(b.col(4).begin(), b.col(4).end());
    const auto t = oracle::textbook_ttest(ca, cb);
    const Verdict want = t.p >= 0.05 ? Verdict::tie : (t.t < 0 ? Verdict::win : Verdict::loss);
    REQUIRE(w.checkpoints.size() == 1);
    CHECK(w.checkpoints[0].verdict == want);
    CHECK(std::abs(w.checkpoints[0].p_value - t.p) <= 1e-7);
  }
}

TEST_CASE("relative curves") {
  LearningCurveSet set;
  set.criteria = {Criterion::nuclear, Criterion::random};
  const Eigen::MatrixXd base = constant_with_noise(1.0, 0.2, 4, 6, 5);
  set.mse = {Eigen::MatrixXd(base.array() + 0.25), base};
  const auto rel = relative_curve(set);
  REQUIRE(rel.size() == 2);
  CHECK((rel[0].mean_difference.array() - 0.25).abs().maxCoeff() <= 1e-12);
  CHECK(rel[1].mean_difference.isZero(0.0));
  set.criteria = {Criterion::nuclear, Criterion::mmd};
  CHECK_THROWS_AS(relative_curve(set), UsageError);
}

TEST_CASE("realizable labels") {
  const Dataset d = standardize(blob(60, 1));
  const KernelSpec k = KernelSpec::gaussian(1.0);
  const Dataset s = synthesize_realizable_labels(d, k, 0.01);
  const TrainedModel f = fit_labeling_function(d, k, 0.01);
  CHECK(s.labels == predict(f, d.features));
  const Dataset again = synthesize_realizable_labels(s, k, 0.01);
  CHECK(mse(again.labels, s.labels) <= mse(s.labels, d.labels));
}

TEST_CASE("tuning") {
  const Dataset d = standardize(blob(80, 2));
  const std::vector<double> one_sigma{0.7}, one_lambda{0.03};
  const TuneResult single = tune_hyperparameters(d, one_sigma, one_lambda, 3, 1);
  CHECK(single.sigma == 0.7);
  CHECK(single.reg_lambda == 0.03);

  const std::vector<double> sigmas{0.3, 1.0, 3.0}, lambdas{1e-3, 1e-2, 1e-1};
  const TuneResult a = tune_hyperparameters(d, sigmas, lambdas, 4, 9);
  const TuneResult b = tune_hyperparameters(d, sigmas, lambdas, 4, 9);
  CHECK(a.sigma == b.sigma);
  CHECK(a.reg_lambda == b.reg_lambda);
  CHECK(a.mean_mse == b.mean_mse);
  CHECK(a.mean_mse.rows() == 3);
  CHECK_THROWS_AS(tune_hyperparameters(blob(20, 1), sigmas, lambdas, 2, 1), UsageError);
}

TEST_CASE("experiment shapes and determinism") {
  const Dataset raw = blob(60, 3);
  ExperimentConfig cfg = small_config();
  const PreparedData p = prepare_data(cfg, raw);
  REQUIRE(p.labeling_function.has_value());
  const ExperimentResult r = run_experiment(cfg, p);
  CHECK(r.curves.runs() == 3);
  CHECK(r.curves.budget() == 6);
  for (const auto& m : r.curves.mse) CHECK(m.allFinite());
  CHECK(r.curves.run_seeds == std::vector<std::uint64_t>{11, 12, 13});
  const ExperimentResult again = run_experiment(cfg, p);
  for (std::size_t c = 0; c < cfg.criteria.size(); ++c) CHECK(r.curves.mse[c] == again.curves.mse[c]);

  cfg.runs = 1;
  cfg.budget = 1;
  cfg.criteria = {Criterion::random};
  const ExperimentResult tiny = run_experiment(cfg, prepare_data(cfg, raw));
  CHECK(tiny.curves.mse[0].rows() == 1);
  CHECK(tiny.curves.mse[0].cols() == 1);

  cfg.budget = 1000;
  CHECK_THROWS_AS(run_experiment(cfg, prepare_data(cfg, raw)), ConfigError);
}

TEST_CASE("experiment queries ignore label permutations") {
  ExperimentConfig cfg = small_config();
  cfg.setting = Setting::agnostic;
  cfg.criteria = {Criterion::discrepancy, Criterion::mmd, Criterion::nuclear};
  const Dataset raw = blob(50, 4);
  Dataset permuted = raw;
  oracle::Rng rng(5);
  std::shuffle(permuted.labels.begin(), permuted.labels.end(), rng);
  const ExperimentResult a = run_experiment(cfg, prepare_data(cfg, raw));
  const ExperimentResult b = run_experiment(cfg, prepare_data(cfg, permuted));
  CHECK(a.queries == b.queries);
}

TEST_CASE("decomposition curve") {
  ExperimentConfig cfg = small_config();
  cfg.decompose_criterion = Criterion::nuclear;
  const DecompositionCurve c = run_decomposition(cfg, prepare_data(cfg, blob(60, 6)));
  CHECK(c.bins.rows() == 6);
  CHECK(c.bin_names.size() == 4);
  CHECK(c.max_identity_error <= 1e-8);
  for (Eigen::Index q = 0; q < 6; ++q)
    CHECK(c.bins.row(q).sum() == doctest::Approx(c.pool_loss(q) - c.labeled_loss(q)).epsilon(1e-6));
  cfg.setting = Setting::agnostic;
  CHECK_THROWS_AS(run_decomposition(cfg, prepare_data(cfg, blob(60, 6))), ConfigError);
}
