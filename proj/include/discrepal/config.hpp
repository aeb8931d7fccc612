#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "discrepal/harness.hpp"

namespace discrepal {

/// Recognized configuration keys (dotted form). Nested JSON objects are
/// flattened, so {"kernel": {"sigma": 1}} and {"kernel.sigma": 1} are the same.
const std::vector<std::string>& config_keys();

struct ConfigSources {
  std::optional<std::filesystem::path> file;  // JSON config
  std::optional<std::uint64_t> seed;          // e.g. from DISCREPAL_SEED
  std::vector<std::string> overrides;         // "key=value"; value parsed as JSON, else taken as text
  // When false, lambda and kernel.sigma may be absent (tuning chooses them).
  bool require_model = true;
};

/// Merges file < seed < overrides and validates the result. Unknown keys,
/// wrong value types, a missing dataset file and out-of-range values throw
/// ConfigError naming the key. Relative dataset paths from the file resolve
/// against the file's directory.
ExperimentConfig load_config(const ConfigSources& sources);

// Parses DISCREPAL_SEED-style text; throws ConfigError on anything but an
// unsigned 64-bit integer.
std::uint64_t parse_seed(const std::string& text);

}  // namespace discrepal
