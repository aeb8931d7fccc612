#include "commands.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <set>
#include <sstream>

#include "discrepal/config.hpp"
#include "discrepal/divergence.hpp"
#include "discrepal/errors.hpp"
#include "discrepal/harness.hpp"
#include "discrepal/kernel.hpp"
#include "discrepal/report.hpp"

namespace discrepal::cli {

namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (...) {
    err << "error: unknown failure\n";
    return kExitRuntime;
  }
}

ExperimentConfig load(const CommandOptions& opts, bool require_model = true) {
  ConfigSources sources;
  sources.file = opts.config;
  sources.seed = opts.seed;
  sources.overrides = opts.overrides;
  if (opts.label_col) sources.overrides.push_back("label_col=\"" + *opts.label_col + "\"");
  sources.require_model = require_model;
  if (!sources.file && sources.overrides.empty()) throw ConfigError("config: --config or --set is required");
  return load_config(sources);
}

std::filesystem::path output_dir(const CommandOptions& opts) {
  if (!opts.out) throw ConfigError("out: --out is required");
  std::error_code ec;
  std::filesystem::create_directories(*opts.out, ec);
  if (ec) throw ConfigError("out: cannot create '" + opts.out->string() + "': " + ec.message());
  return *opts.out;
}

IndexList parse_indices(const std::string& text, std::size_t n) {
  IndexList out;
  std::set<std::size_t> seen;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw UsageError("labeled: empty index in '" + text + "'");
    item = item.substr(first, last - first + 1);
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || p != item.data() + item.size())
      throw UsageError("labeled: '" + item + "' is not a row index");
    if (v >= n) throw UsageError("labeled: index " + item + " out of range for " + std::to_string(n) + " rows");
    if (!seen.insert(v).second) throw UsageError("labeled: duplicate index " + item);
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("labeled: empty labeled set");
  return out;
}

}  // namespace

std::optional<std::uint64_t> seed_from_environment() {
  const char* value = std::getenv("DISCREPAL_SEED");
  if (value == nullptr || *value == '\0') return std::nullopt;
  return parse_seed(value);
}

int cmd_tune(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load(opts, false);
    if (cfg.kernel_family != KernelFamily::gaussian) throw ConfigError("kernel.family: tuning needs the gaussian kernel");
    const Dataset raw = load_csv(cfg.dataset, cfg.label_col, LabelMode::realizable);
    const Dataset data = standardize(subsample(raw, cfg.max_n, cfg.seed));
    const auto sigmas = cfg.tune_sigma_grid.empty() ? default_sigma_grid() : cfg.tune_sigma_grid;
    auto log_lambdas = cfg.tune_log10_lambda_grid.empty() ? default_log10_lambda_grid() : cfg.tune_log10_lambda_grid;
    std::vector<double> lambdas;
    for (double l : log_lambdas) lambdas.push_back(std::pow(10.0, l));
    const TuneResult result = tune_hyperparameters(data, sigmas, lambdas, cfg.tune_reps, cfg.seed);
    if (opts.out) write_tune_csv(output_dir(opts) / "tune.csv", result);
    out << "sigma,lambda\n" << format_number(result.sigma) << ',' << format_number(result.reg_lambda) << '\n';
  });
}

int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load(opts);
    const auto dir = output_dir(opts);
    const ExperimentResult result = run_experiment(cfg);
    write_curves_csv(dir / "curves.csv", result.curves);
    write_summary_csv(dir / "summary.csv", result.curves);
    write_wtl_csv(dir / "wtl.csv", result.curves, cfg.stride, cfg.p_threshold, cfg.ttest);
    out << "wrote curves.csv, summary.csv, wtl.csv to " << dir.string() << '\n';
  });
}

int cmd_divergence(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.dataset.empty()) throw UsageError("dataset: a dataset path is required");
    if (!(opts.lambda_cap > 0.0) || !std::isfinite(opts.lambda_cap))
      throw ConfigError("lambda-cap: must be positive and finite");
    KernelSpec kernel = KernelSpec::linear();
    if (opts.kernel == "gaussian") {
      if (!opts.sigma) throw ConfigError("sigma: --sigma is required for the gaussian kernel");
      kernel = KernelSpec::gaussian(*opts.sigma);
    } else if (opts.kernel != "linear") {
      throw ConfigError("kernel: expected 'gaussian' or 'linear', got '" + opts.kernel + "'");
    }
    const Dataset data = load_csv(opts.dataset, opts.label_col.value_or("y"), LabelMode::realizable);
    const IndexList labeled = parse_indices(opts.labeled, data.size());

    IndexList order = labeled;
    std::vector<bool> is_labeled(data.size(), false);
    for (auto i : labeled) is_labeled[i] = true;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (!is_labeled[i]) order.push_back(i);
    const Eigen::MatrixXd x = data.features(order, Eigen::all);
    const Spectrum s = spectrum(gram(kernel, x), build_D(data.size(), labeled.size()));
    const DivergenceValues v = divergences(s, opts.lambda_cap);
    out << fmt::format("{},{},{}\n", format_number(v.discrepancy), format_number(v.mmd), format_number(v.nuclear));
  });
}

int cmd_decompose(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load(opts);
    const DecompositionCurve curve = run_decomposition(cfg, prepare_data(cfg));
    if (opts.out) {
      const auto dir = output_dir(opts);
      write_decomp_csv(dir / "decomp.csv", curve);
      out << "wrote decomp.csv to " << dir.string() << '\n';
    } else {
      write_decomp_csv(out, curve);
    }
  });
}

int cmd_summarize(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!opts.out) throw ConfigError("out: --out must name a directory holding curves.csv");
    std::size_t stride = 5;
    double p_threshold = 0.05;
    TTestKind kind = TTestKind::student_pooled;
    for (const auto& item : opts.overrides) {
      const auto eq = item.find('=');
      const std::string key = item.substr(0, eq);
      if (eq == std::string::npos) throw ConfigError("--set: expected key=value, got '" + item + "'");
      std::string value = item.substr(eq + 1);
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      if (key == "stride") {
        const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), stride);
        if (ec != std::errc{} || p != value.data() + value.size() || stride == 0)
          throw ConfigError("stride: expected a positive integer");
      } else if (key == "p_value") {
        const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), p_threshold);
        if (ec != std::errc{} || p != value.data() + value.size() || !(p_threshold > 0.0 && p_threshold < 1.0))
          throw ConfigError("p_value: expected a number in (0, 1)");
      } else if (key == "ttest") {
        kind = parse_ttest_kind(value);
      } else {
        throw ConfigError(key + ": unknown key for summarize (stride, p_value, ttest)");
      }
    }
    const auto dir = *opts.out;
    const LearningCurveSet curves = read_curves_csv(dir / "curves.csv");
    write_summary_csv(dir / "summary.csv", curves);
    write_wtl_csv(dir / "wtl.csv", curves, stride, p_threshold, kind);
    out << "wrote summary.csv, wtl.csv to " << dir.string() << '\n';
  });
}

}  // namespace discrepal::cli
