#include "discrepal/config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "discrepal/errors.hpp"

namespace discrepal {

using nlohmann::json;

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "dataset", "label_col", "setting",  "kernel.family", "kernel.sigma",        "lambda",
      "runs",    "budget",    "seed",     "criteria",      "max_n",               "train_frac",
      "stride",  "p_value",   "ttest",    "scoring",       "decompose.criterion", "tune.sigma_grid",
      "tune.log10_lambda_grid", "tune.reps"};
  return keys;
}

namespace {

void flatten(const json& node, const std::string& prefix, json& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else {
    out[prefix] = node;
  }
}

double get_number(const json& flat, const std::string& key) {
  const auto& v = flat.at(key);
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(key + ": expected a finite number");
  return d;
}

std::uint64_t get_count(const json& flat, const std::string& key) {
  const auto& v = flat.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw ConfigError(key + ": must not be negative");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw ConfigError(key + ": expected a non-negative integer");
}

std::string get_string(const json& flat, const std::string& key) {
  const auto& v = flat.at(key);
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> get_number_list(const json& flat, const std::string& key) {
  const auto& v = flat.at(key);
  if (!v.is_array()) throw ConfigError(key + ": expected a list of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(key + ": expected a list of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

template <typename Parse>
auto with_key(const std::string& key, Parse&& parse) {
  try {
    return parse();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind(key, 0) == 0) throw;
    throw ConfigError(key + ": " + what);
  }
}

}  // namespace

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw ConfigError("seed: '" + text + "' is not an unsigned 64-bit integer");
  return value;
}

ExperimentConfig load_config(const ConfigSources& sources) {
  json flat = json::object();
  std::filesystem::path base_dir;
  if (sources.file) {
    std::ifstream in(*sources.file);
    if (!in) throw ConfigError("config: cannot open '" + sources.file->string() + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("config: '" + sources.file->string() + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
    flatten(doc, "", flat);
    base_dir = sources.file->parent_path();
  }
  bool dataset_from_file = flat.contains("dataset");
  if (sources.seed) flat["seed"] = *sources.seed;
  for (const auto& item : sources.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    flat[key] = value;
    if (key == "dataset") dataset_from_file = false;
  }

  const auto& known = config_keys();
  for (const auto& [key, value] : flat.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(key + ": unknown configuration key");
  }

  ExperimentConfig cfg;
  if (!flat.contains("dataset")) throw ConfigError("dataset: missing dataset path");
  cfg.dataset = get_string(flat, "dataset");
  if (dataset_from_file && cfg.dataset.is_relative() && !base_dir.empty()) cfg.dataset = base_dir / cfg.dataset;
  if (!std::filesystem::is_regular_file(cfg.dataset))
    throw ConfigError("dataset: file '" + cfg.dataset.string() + "' does not exist");

  if (flat.contains("label_col")) cfg.label_col = get_string(flat, "label_col");
  if (flat.contains("setting")) cfg.setting = with_key("setting", [&] { return parse_setting(get_string(flat, "setting")); });
  if (flat.contains("kernel.family")) {
    const auto family = get_string(flat, "kernel.family");
    if (family == "gaussian") {
      cfg.kernel_family = KernelFamily::gaussian;
    } else if (family == "linear") {
      cfg.kernel_family = KernelFamily::linear;
    } else {
      throw ConfigError("kernel.family: expected 'gaussian' or 'linear', got '" + family + "'");
    }
  }
  if (flat.contains("kernel.sigma")) {
    cfg.sigma = get_number(flat, "kernel.sigma");
  } else if (sources.require_model && cfg.kernel_family == KernelFamily::gaussian) {
    throw ConfigError("kernel.sigma: required for the gaussian kernel");
  }
  if (flat.contains("lambda")) {
    cfg.reg_lambda = get_number(flat, "lambda");
  } else if (sources.require_model) {
    throw ConfigError("lambda: missing regularization parameter");
  }
  if (flat.contains("runs")) cfg.runs = get_count(flat, "runs");
  if (flat.contains("budget")) cfg.budget = get_count(flat, "budget");
  if (flat.contains("seed")) cfg.seed = get_count(flat, "seed");
  if (flat.contains("criteria")) {
    const auto& v = flat.at("criteria");
    if (!v.is_array()) throw ConfigError("criteria: expected a list of criterion names");
    cfg.criteria.clear();
    for (const auto& e : v) {
      if (!e.is_string()) throw ConfigError("criteria: expected a list of criterion names");
      cfg.criteria.push_back(with_key("criteria", [&] { return parse_criterion(e.get<std::string>()); }));
    }
  }
  if (flat.contains("max_n")) cfg.max_n = get_count(flat, "max_n");
  if (flat.contains("train_frac")) cfg.train_frac = get_number(flat, "train_frac");
  if (flat.contains("stride")) cfg.stride = get_count(flat, "stride");
  if (flat.contains("p_value")) cfg.p_threshold = get_number(flat, "p_value");
  if (flat.contains("ttest")) cfg.ttest = with_key("ttest", [&] { return parse_ttest_kind(get_string(flat, "ttest")); });
  if (flat.contains("scoring"))
    cfg.scoring = with_key("scoring", [&] { return parse_scoring_backend(get_string(flat, "scoring")); });
  if (flat.contains("decompose.criterion"))
    cfg.decompose_criterion =
        with_key("decompose.criterion", [&] { return parse_criterion(get_string(flat, "decompose.criterion")); });
  if (flat.contains("tune.sigma_grid")) cfg.tune_sigma_grid = get_number_list(flat, "tune.sigma_grid");
  if (flat.contains("tune.log10_lambda_grid"))
    cfg.tune_log10_lambda_grid = get_number_list(flat, "tune.log10_lambda_grid");
  if (flat.contains("tune.reps")) cfg.tune_reps = get_count(flat, "tune.reps");

  cfg.validate();
  return cfg;
}

}  // namespace discrepal
