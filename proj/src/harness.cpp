#include "discrepal/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "discrepal/decomposition.hpp"
#include "discrepal/errors.hpp"

namespace discrepal {

std::string to_string(Setting s) { return s == Setting::realizable ? "realizable" : "agnostic"; }

Setting parse_setting(std::string_view name) {
  if (name == "realizable") return Setting::realizable;
  if (name == "agnostic") return Setting::agnostic;
  throw ConfigError("setting: expected 'realizable' or 'agnostic', got '" + std::string(name) + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::win:
      return "win";
    case Verdict::tie:
      return "tie";
    case Verdict::loss:
      return "loss";
  }
  return "tie";
}

KernelSpec ExperimentConfig::kernel() const {
  return kernel_family == KernelFamily::gaussian ? KernelSpec::gaussian(sigma) : KernelSpec::linear();
}

void ExperimentConfig::validate() const {
  if (dataset.empty()) throw ConfigError("dataset: missing dataset path");
  if (runs < 1) throw ConfigError("runs: must be at least 1");
  if (budget < 1) throw ConfigError("budget: must be at least 1");
  if (kernel_family == KernelFamily::gaussian && !(sigma > 0.0 && std::isfinite(sigma)))
    throw ConfigError("kernel.sigma: must be positive");
  if (!(reg_lambda > 0.0 && std::isfinite(reg_lambda))) throw ConfigError("lambda: must be positive");
  if (criteria.empty()) throw ConfigError("criteria: at least one criterion is required");
  for (std::size_t i = 0; i < criteria.size(); ++i)
    for (std::size_t j = i + 1; j < criteria.size(); ++j)
      if (criteria[i] == criteria[j]) throw ConfigError("criteria: duplicate entry '" + to_string(criteria[i]) + "'");
  if (max_n < 2) throw ConfigError("max_n: must be at least 2");
  if (!(train_frac > 0.0 && train_frac < 1.0)) throw ConfigError("train_frac: must lie in (0, 1)");
  if (stride < 1) throw ConfigError("stride: must be at least 1");
  if (!(p_threshold > 0.0 && p_threshold < 1.0)) throw ConfigError("p_value: must lie in (0, 1)");
  if (tune_reps < 1) throw ConfigError("tune.reps: must be at least 1");
  for (double s : tune_sigma_grid)
    if (!(s > 0.0)) throw ConfigError("tune.sigma_grid: bandwidths must be positive");
}

std::vector<double> default_sigma_grid() {
  std::vector<double> grid;
  for (int k = -4; k <= 10; ++k) grid.push_back(std::pow(10.0, 0.125 * k));
  return grid;
}

std::vector<double> default_log10_lambda_grid() {
  std::vector<double> grid;
  for (int k = -20; k <= 0; ++k) grid.push_back(0.2 * k);
  return grid;
}

// ---------------------------------------------------------------------------
// Learning curves

bool LearningCurveSet::contains(Criterion c) const {
  return std::find(criteria.begin(), criteria.end(), c) != criteria.end();
}

const Eigen::MatrixXd& LearningCurveSet::curves(Criterion c) const {
  const auto it = std::find(criteria.begin(), criteria.end(), c);
  if (it == criteria.end()) throw UsageError("no learning curves for criterion '" + to_string(c) + "'");
  return mse[static_cast<std::size_t>(it - criteria.begin())];
}

Eigen::VectorXd LearningCurveSet::mean(Criterion c) const { return curves(c).colwise().mean().transpose(); }

Eigen::VectorXd LearningCurveSet::standard_error(Criterion c) const {
  const Eigen::MatrixXd& m = curves(c);
  Eigen::VectorXd se = Eigen::VectorXd::Zero(m.cols());
  for (Eigen::Index q = 0; q < m.cols(); ++q) {
    const Eigen::VectorXd col = m.col(q);
    se[q] = discrepal::standard_error(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
  }
  return se;
}

std::size_t LearningCurveSet::runs() const { return mse.empty() ? 0 : static_cast<std::size_t>(mse.front().rows()); }

std::size_t LearningCurveSet::budget() const {
  return mse.empty() ? 0 : static_cast<std::size_t>(mse.front().cols());
}

WinTieLoss compare(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::size_t stride, double p_threshold,
                   TTestKind kind) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("compare: curve matrices differ in shape");
  if (stride < 1) throw UsageError("compare: stride must be at least 1");
  WinTieLoss out;
  out.stride = stride;
  out.p_threshold = p_threshold;
  const auto budget = static_cast<std::size_t>(a.cols());
  for (std::size_t q = stride; q <= budget; q += stride) {
    const auto col = static_cast<Eigen::Index>(q - 1);
    Checkpoint cp;
    cp.query = q;
    if (a.rows() >= 2) {
      const Eigen::VectorXd xa = a.col(col);
      const Eigen::VectorXd xb = b.col(col);
      const auto t = two_sample_ttest(std::span<const double>(xa.data(), static_cast<std::size_t>(xa.size())),
                                      std::span<const double>(xb.data(), static_cast<std::size_t>(xb.size())), kind);
      cp.p_value = t.p_value;
      if (t.p_value < p_threshold) cp.verdict = xa.mean() < xb.mean() ? Verdict::win : Verdict::loss;
    }
    switch (cp.verdict) {
      case Verdict::win:
        ++out.win;
        break;
      case Verdict::tie:
        ++out.tie;
        break;
      case Verdict::loss:
        ++out.loss;
        break;
    }
    out.checkpoints.push_back(cp);
  }
  return out;
}

std::vector<RelativeCurve> relative_curve(const LearningCurveSet& curves, Criterion baseline) {
  if (!curves.contains(baseline))
    throw UsageError("relative_curve: baseline '" + to_string(baseline) + "' is not in the curve set");
  const Eigen::VectorXd base = curves.mean(baseline);
  std::vector<RelativeCurve> out;
  for (auto c : curves.criteria) {
    RelativeCurve r;
    r.criterion = c;
    r.mean_difference = curves.mean(c) - base;
    r.standard_error = curves.standard_error(c);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Data preparation and tuning

TrainedModel fit_labeling_function(const Dataset& data, const KernelSpec& kernel, double reg_lambda) {
  IndexList all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return fit(data, all, kernel, reg_lambda);
}

Dataset synthesize_realizable_labels(const Dataset& data, const KernelSpec& kernel, double reg_lambda) {
  const TrainedModel f = fit_labeling_function(data, kernel, reg_lambda);
  Dataset out = data;
  out.labels = predict(f, data.features);
  return out;
}

TuneResult tune_hyperparameters(const Dataset& data, std::span<const double> sigma_grid,
                                std::span<const double> lambda_grid, std::size_t reps, std::uint64_t seed,
                                std::size_t labeled) {
  if (sigma_grid.empty() || lambda_grid.empty()) throw UsageError("tune: grids must be nonempty");
  if (reps < 1) throw UsageError("tune: reps must be at least 1");
  const std::size_t n = data.size();
  if (n <= labeled)
    throw UsageError("tune: dataset has " + std::to_string(n) + " rows, needs more than " + std::to_string(labeled));

  // Common random draws for every grid point.
  Rng rng(seed);
  std::vector<IndexList> train_sets;
  std::vector<IndexList> rest_sets;
  for (std::size_t r = 0; r < reps; ++r) {
    IndexList order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    IndexList train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(labeled));
    IndexList rest(order.begin() + static_cast<std::ptrdiff_t>(labeled), order.end());
    std::sort(train.begin(), train.end());
    std::sort(rest.begin(), rest.end());
    train_sets.push_back(std::move(train));
    rest_sets.push_back(std::move(rest));
  }

  TuneResult out;
  out.sigma_grid.assign(sigma_grid.begin(), sigma_grid.end());
  out.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  out.mean_mse = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sigma_grid.size()),
                                       static_cast<Eigen::Index>(lambda_grid.size()));
  for (std::size_t si = 0; si < sigma_grid.size(); ++si) {
    const KernelSpec kernel = KernelSpec::gaussian(sigma_grid[si]);
    const Eigen::MatrixXd k = gram(kernel, data.features);
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& train = train_sets[r];
      const auto& rest = rest_sets[r];
      const Eigen::MatrixXd k_train = k(train, train);
      const Eigen::MatrixXd k_rest = k(rest, train);
      const Eigen::VectorXd y_train = data.labels(train);
      const Eigen::VectorXd y_rest = data.labels(rest);
      for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
        Eigen::MatrixXd system = k_train;
        system.diagonal().array() += static_cast<double>(labeled) * lambda_grid[li];
        const Eigen::VectorXd alpha = system.llt().solve(y_train);
        out.mean_mse(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(li)) +=
            mse(k_rest * alpha, y_rest) / static_cast<double>(reps);
      }
    }
  }
  Eigen::Index best_s = 0;
  Eigen::Index best_l = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index s = 0; s < out.mean_mse.rows(); ++s)
    for (Eigen::Index l = 0; l < out.mean_mse.cols(); ++l)
      if (out.mean_mse(s, l) < best) {
        best = out.mean_mse(s, l);
        best_s = s;
        best_l = l;
      }
  out.sigma = out.sigma_grid[static_cast<std::size_t>(best_s)];
  out.reg_lambda = out.lambda_grid[static_cast<std::size_t>(best_l)];
  return out;
}

PreparedData prepare_data(const ExperimentConfig& cfg, const Dataset& raw) {
  cfg.validate();
  PreparedData out;
  out.data = standardize(subsample(raw, cfg.max_n, cfg.seed));
  if (cfg.setting == Setting::realizable) {
    out.labeling_function = fit_labeling_function(out.data, cfg.kernel(), cfg.reg_lambda);
    out.data.labels = predict(*out.labeling_function, out.data.features);
  } else {
    validate(out.data, LabelMode::agnostic);
  }
  return out;
}

PreparedData prepare_data(const ExperimentConfig& cfg) {
  const LabelMode mode = cfg.setting == Setting::agnostic ? LabelMode::agnostic : LabelMode::realizable;
  return prepare_data(cfg, load_csv(cfg.dataset, cfg.label_col, mode));
}

// ---------------------------------------------------------------------------
// Experiments

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run) { return base_seed + run; }

namespace {

// Stream for random query draws, decorrelated from the split stream of the
// same run seed.
Rng selection_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x51u};
  return Rng(seq);
}

void check_budget(const ExperimentConfig& cfg, std::size_t n) {
  const auto n_train = static_cast<std::size_t>(std::llround(cfg.train_frac * static_cast<double>(n)));
  if (cfg.budget > n_train)
    throw ConfigError("budget: " + std::to_string(cfg.budget) + " exceeds the training pool of " +
                      std::to_string(n_train) + " points");
}

bool needs_geometry(const std::vector<Criterion>& criteria) {
  return std::any_of(criteria.begin(), criteria.end(), [](Criterion c) { return c != Criterion::random; });
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const PreparedData& prepared) {
  cfg.validate();
  const Dataset& data = prepared.data;
  check_budget(cfg, data.size());
  const KernelSpec kernel = cfg.kernel();
  const SelectionOptions options{cfg.scoring};

  ExperimentResult out;
  out.curves.criteria = cfg.criteria;
  for (std::size_t c = 0; c < cfg.criteria.size(); ++c) {
    out.curves.mse.emplace_back(static_cast<Eigen::Index>(cfg.runs), static_cast<Eigen::Index>(cfg.budget));
    out.queries.emplace_back(cfg.runs);
  }

  for (std::size_t r = 0; r < cfg.runs; ++r) {
    const std::uint64_t seed = run_seed(cfg.seed, r);
    out.curves.run_seeds.push_back(seed);
    const SplitIndices split_indices = split(data, cfg.train_frac, seed);
    const Eigen::MatrixXd x_test = data.features(split_indices.test, Eigen::all);
    const Eigen::VectorXd y_test = data.labels(split_indices.test);
    std::optional<PoolGeometry> geometry;
    if (needs_geometry(cfg.criteria)) geometry.emplace(data, split_indices.train, kernel);

    for (std::size_t c = 0; c < cfg.criteria.size(); ++c) {
      const Criterion criterion = cfg.criteria[c];
      QueryState state(split_indices.train);
      Rng rng = selection_rng(seed);
      IndexList& queries = out.queries[c][r];
      for (std::size_t q = 0; q < cfg.budget; ++q) {
        const std::size_t s = criterion == Criterion::random
                                  ? select_next(state, data, criterion, kernel, rng, options)
                                  : select_next(state, *geometry, criterion, rng, options);
        state.add(s);
        queries.push_back(s);
        const TrainedModel h = fit(data, state.labeled(), kernel, cfg.reg_lambda);
        out.curves.mse[c](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)) =
            mse(predict(h, x_test), y_test);
      }
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg, prepare_data(cfg)); }

DecompositionCurve run_decomposition(const ExperimentConfig& cfg, const PreparedData& prepared) {
  cfg.validate();
  if (cfg.setting != Setting::realizable || !prepared.labeling_function)
    throw ConfigError("setting: the error decomposition needs the realizable setting");
  const Dataset& data = prepared.data;
  check_budget(cfg, data.size());
  const KernelSpec kernel = cfg.kernel();
  const TrainedModel& f = *prepared.labeling_function;
  const SelectionOptions options{cfg.scoring};

  DecompositionCurve out;
  out.labeled_loss = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cfg.budget));
  out.pool_loss = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cfg.budget));
  const double weight = 1.0 / static_cast<double>(cfg.runs);

  for (std::size_t r = 0; r < cfg.runs; ++r) {
    const std::uint64_t seed = run_seed(cfg.seed, r);
    const SplitIndices split_indices = split(data, cfg.train_frac, seed);
    std::optional<PoolGeometry> geometry;
    if (cfg.decompose_criterion != Criterion::random) geometry.emplace(data, split_indices.train, kernel);
    QueryState state(split_indices.train);
    Rng rng = selection_rng(seed);
    for (std::size_t q = 0; q < cfg.budget; ++q) {
      const std::size_t s = geometry ? select_next(state, *geometry, cfg.decompose_criterion, rng, options)
                                     : select_next(state, data, cfg.decompose_criterion, kernel, rng, options);
      state.add(s);
      const TrainedModel h = fit(data, state.labeled(), kernel, cfg.reg_lambda);
      const DecompositionResult d = decompose_kernel(f, h, data, state);
      const LossGap gap = loss_gap(f, h, data, state);
      const auto bins = bin_contributions(d);
      if (out.bin_names.empty()) {
        for (const auto& b : bins) out.bin_names.push_back(b.name);
        out.bins = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cfg.budget), static_cast<Eigen::Index>(bins.size()));
      }
      const auto row = static_cast<Eigen::Index>(q);
      for (std::size_t b = 0; b < bins.size(); ++b) out.bins(row, static_cast<Eigen::Index>(b)) += weight * bins[b].value;
      out.labeled_loss[row] += weight * gap.labeled_loss;
      out.pool_loss[row] += weight * gap.pool_loss;
      out.max_identity_error =
          std::max(out.max_identity_error, std::abs(d.total() - (gap.pool_loss - gap.labeled_loss)));
    }
  }
  return out;
}

}  // namespace discrepal
