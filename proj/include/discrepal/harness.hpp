#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discrepal/active_learner.hpp"
#include "discrepal/candidate_scoring.hpp"
#include "discrepal/data_model.hpp"
#include "discrepal/kernel.hpp"
#include "discrepal/krls.hpp"
#include "discrepal/stats.hpp"

namespace discrepal {

// realizable: labels are replaced by a model fit on the whole dataset.
// agnostic: the original +1/-1 labels are used.
enum class Setting { realizable, agnostic };

std::string to_string(Setting s);
Setting parse_setting(std::string_view name);

struct ExperimentConfig {
  std::filesystem::path dataset;
  std::string label_col = "y";
  Setting setting = Setting::realizable;
  KernelFamily kernel_family = KernelFamily::gaussian;
  double sigma = 1.0;
  double reg_lambda = 0.01;
  std::size_t runs = 100;
  std::size_t budget = 50;
  std::uint64_t seed = 0;
  std::vector<Criterion> criteria{Criterion::discrepancy, Criterion::mmd, Criterion::nuclear, Criterion::random};

  std::size_t max_n = 1000;
  double train_frac = 0.65;
  std::size_t stride = 5;
  double p_threshold = 0.05;
  TTestKind ttest = TTestKind::student_pooled;
  ScoringBackend scoring = ScoringBackend::rank_one;
  Criterion decompose_criterion = Criterion::random;

  std::vector<double> tune_sigma_grid;
  std::vector<double> tune_log10_lambda_grid;
  std::size_t tune_reps = 10;

  KernelSpec kernel() const;
  // Throws ConfigError naming the first offending key.
  void validate() const;
};

// Default tuning grids: bandwidth 10^-0.5 .. 10^1.25 in steps of 0.125 decades,
// log10(lambda) from -4 to 0 in steps of 0.2.
std::vector<double> default_sigma_grid();
std::vector<double> default_log10_lambda_grid();

/// Per-criterion test-MSE matrices (runs x budget). Column q holds the MSE
/// after q + 1 queries.
struct LearningCurveSet {
  std::vector<Criterion> criteria;
  std::vector<Eigen::MatrixXd> mse;
  std::vector<std::uint64_t> run_seeds;

  bool contains(Criterion c) const;
  const Eigen::MatrixXd& curves(Criterion c) const;  // throws UsageError when missing
  Eigen::VectorXd mean(Criterion c) const;
  Eigen::VectorXd standard_error(Criterion c) const;  // sample sd / sqrt(runs)
  std::size_t runs() const;
  std::size_t budget() const;
};

enum class Verdict { win, tie, loss };
std::string to_string(Verdict v);

struct Checkpoint {
  std::size_t query = 0;  // 1-based query count
  double p_value = 1.0;
  Verdict verdict = Verdict::tie;
};

struct WinTieLoss {
  std::size_t win = 0;
  std::size_t tie = 0;
  std::size_t loss = 0;
  std::size_t stride = 5;
  double p_threshold = 0.05;
  std::vector<Checkpoint> checkpoints;
};

/// Compares `a` against `b` after every `stride` queries with a two-tailed
/// t-test over the runs: lower mean MSE with p < p_threshold is a win for `a`,
/// p >= p_threshold a tie, otherwise a loss. Fewer than 2 runs gives ties.
WinTieLoss compare(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::size_t stride = 5,
                   double p_threshold = 0.05, TTestKind kind = TTestKind::student_pooled);

struct RelativeCurve {
  Criterion criterion = Criterion::random;
  Eigen::VectorXd mean_difference;  // mean(criterion) - mean(baseline), per query
  Eigen::VectorXd standard_error;   // of the criterion's own runs; 95% band is 1.96x
};

// One entry per criterion in the set, baseline included. Throws UsageError
// when the baseline is missing.
std::vector<RelativeCurve> relative_curve(const LearningCurveSet& curves, Criterion baseline = Criterion::random);

// Model fit on every row with the current labels (the realizable labeling function).
TrainedModel fit_labeling_function(const Dataset& data, const KernelSpec& kernel, double reg_lambda);

// Replaces labels with the predictions of fit_labeling_function.
Dataset synthesize_realizable_labels(const Dataset& data, const KernelSpec& kernel, double reg_lambda);

struct TuneResult {
  double sigma = 0.0;
  double reg_lambda = 0.0;
  std::vector<double> sigma_grid;
  std::vector<double> lambda_grid;
  Eigen::MatrixXd mean_mse;  // sigma_grid x lambda_grid
};

/// Grid search: every grid point is scored on the same `reps` random draws of
/// `labeled` points (fit on the draw, MSE on the remaining rows); the lowest
/// average wins, earlier grid points on ties. Throws UsageError when the
/// dataset has no more than `labeled` rows.
TuneResult tune_hyperparameters(const Dataset& data, std::span<const double> sigma_grid,
                                std::span<const double> lambda_grid, std::size_t reps, std::uint64_t seed,
                                std::size_t labeled = 25);

/// Dataset after subsampling, standardization and (realizable setting) label
/// synthesis, plus the labeling function in that case.
struct PreparedData {
  Dataset data;
  std::optional<TrainedModel> labeling_function;
};

PreparedData prepare_data(const ExperimentConfig& cfg, const Dataset& raw);
PreparedData prepare_data(const ExperimentConfig& cfg);  // loads cfg.dataset

struct ExperimentResult {
  LearningCurveSet curves;
  // queries[criterion][run], dataset row indices in selection order.
  std::vector<std::vector<IndexList>> queries;
};

/// Runs cfg.runs independent splits (seed + r). On each split the training
/// part is the pool; every criterion runs a session of cfg.budget queries and
/// the model is refit on the labeled set after each query to record test MSE.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const PreparedData& prepared);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Mean error decomposition per query over the runs of one criterion
/// (realizable setting only).
struct DecompositionCurve {
  std::vector<std::string> bin_names;
  Eigen::MatrixXd bins;          // budget x bins, mean over runs
  Eigen::VectorXd labeled_loss;  // mean L_Q(h, f) per query
  Eigen::VectorXd pool_loss;     // mean L_P(h, f) per query
  double max_identity_error = 0.0;  // max |sum of contributions - (L_P - L_Q)| over all runs/queries
};

DecompositionCurve run_decomposition(const ExperimentConfig& cfg, const PreparedData& prepared);

// Seed of run r.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run);

}  // namespace discrepal
