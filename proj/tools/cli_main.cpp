#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "discrepal/errors.hpp"
#include "discrepal/parallel.hpp"

namespace cli = discrepal::cli;

int main(int argc, char** argv) {
  CLI::App app{"discrepal: discrepancy-based active learning for kernel regularized least squares"};
  app.require_subcommand(1);

  cli::CommandOptions opts;
  int parallel = 0;
  app.add_option("--parallel", parallel, "Maximum worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

  auto add_config_flags = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "JSON configuration file");
    sub->add_option("--set", opts.overrides, "Override a configuration key (key=value), repeatable");
    sub->add_option("--label-col", opts.label_col, "Label column name");
  };

  auto* tune = app.add_subcommand("tune", "Grid-search kernel bandwidth and regularization");
  add_config_flags(tune);
  tune->add_option("--out", opts.out, "Directory for tune.csv");

  auto* run = app.add_subcommand("run", "Run the active learning experiment");
  add_config_flags(run);
  run->add_option("--out", opts.out, "Output directory")->required();

  auto* divergence = app.add_subcommand("divergence", "Print discrepancy,mmd,nuclear for a labeled subset");
  divergence->add_option("dataset", opts.dataset, "CSV dataset (all rows form the pool)")->required();
  divergence->add_option("--labeled", opts.labeled, "Comma-separated labeled row indices")->required();
  divergence->add_option("--kernel", opts.kernel, "gaussian or linear");
  divergence->add_option("--sigma", opts.sigma, "Gaussian bandwidth");
  divergence->add_option("--lambda-cap", opts.lambda_cap, "Hypothesis-ball radius (default 1)");
  divergence->add_option("--label-col", opts.label_col, "Label column name");

  auto* decompose = app.add_subcommand("decompose", "Per-query error decomposition (realizable setting)");
  add_config_flags(decompose);
  decompose->add_option("--out", opts.out, "Directory for decomp.csv (stdout when absent)");

  auto* summarize = app.add_subcommand("summarize", "Recompute summary.csv and wtl.csv from curves.csv");
  summarize->add_option("--out", opts.out, "Directory holding curves.csv")->required();
  summarize->add_option("--set", opts.overrides, "stride=, p_value= or ttest= override, repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    opts.seed = cli::seed_from_environment();
  } catch (const discrepal::Error& e) {
    std::cerr << "error: DISCREPAL_SEED: " << e.what() << '\n';
    return cli::kExitUsage;
  }
  if (parallel > 0) discrepal::set_max_threads(parallel);

  if (tune->parsed()) return cli::cmd_tune(opts, std::cout, std::cerr);
  if (run->parsed()) return cli::cmd_run(opts, std::cout, std::cerr);
  if (divergence->parsed()) return cli::cmd_divergence(opts, std::cout, std::cerr);
  if (decompose->parsed()) return cli::cmd_decompose(opts, std::cout, std::cerr);
  return cli::cmd_summarize(opts, std::cout, std::cerr);
}
