#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace discrepal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::vector<std::string> overrides;  // key=value
  std::optional<std::string> label_col;
  std::optional<std::uint64_t> seed;   // DISCREPAL_SEED

  // divergence only
  std::filesystem::path dataset;
  std::string labeled;                 // comma-separated row indices
  std::string kernel = "linear";
  std::optional<double> sigma;
  double lambda_cap = 1.0;
};

// Each command returns 0, 1 or 2 and never throws. Results go to `out`,
// diagnostics to `err`.
int cmd_tune(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_divergence(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_decompose(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_summarize(const CommandOptions& opts, std::ostream& out, std::ostream& err);

// Reads DISCREPAL_SEED; empty when unset. Throws ConfigError when malformed.
std::optional<std::uint64_t> seed_from_environment();

}  // namespace discrepal::cli
